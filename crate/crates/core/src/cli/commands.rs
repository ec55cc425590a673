use super::config::{EffdimMethod, RunConfig};
use super::csv::{Cell, CsvWriter};
use crate::bounds::{
    fourier_lower_bound, ols_minimax_bound, rate_lower_bound, single_frequency_lower_bound, taylor_lower_bound, theorem_band,
    bias_variance_oracle, BoundReport, Count,
};
use crate::cli::config::BoundRequest;
use crate::error::{Error, Result};
use crate::experiments::{
    effdim_nodes, online_growth_experiment, profile_experiment_with, sample_inputs, stream_rng, sweep_with, Budget,
};
use crate::kernels::{monomial_exponents, polynomial_design, polynomial_embedding_gram, DomainSpec, KernelSpec, Points};
use crate::linalg::sym_eigen;
use crate::ridge::{averaged_weight_profile, population_weights};
use crate::spectral::{empirical_effective_dimension, n_plus_empirical, SpectralModel, Truncation};
use std::io::Write;

fn budget(cfg: &RunConfig) -> Budget {
    let mut b = match cfg.budget.seconds {
        Some(s) => Budget::seconds(s),
        None => Budget::unlimited(),
    };
    b.max_cells = cfg.budget.max_cells;
    b
}

pub fn cmd_effdim(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let spec = cfg.section(&cfg.effdim, "effdim")?;
    spec.domain.validate()?;
    if spec.sigmas.is_empty() || spec.lambdas.is_empty() {
        return Err(Error::Config("effdim needs nonempty sigma and lambda grids".into()));
    }
    let d = spec.domain.dim();
    if let Some(t) = &spec.target {
        t.validate(d)?;
    }
    let mut w = CsvWriter::new(out, cfg, &["sigma", "lambda", "N1", "N2", "Nplus", "S"])?;
    match spec.method {
        EffdimMethod::Spectral { cutoff } => {
            if !matches!(spec.domain, DomainSpec::Torus { .. }) {
                return Err(Error::Config("spectral effective dimensions need a torus domain".into()));
            }
            let fourier = match &spec.target {
                Some(t) => Some(t.fourier(d).ok_or_else(|| {
                    Error::Config("spectral bias needs a target with a Fourier expansion".into())
                })?),
                None => None,
            };
            for &sigma in &spec.sigmas {
                for &lambda in &spec.lambdas {
                    let mut model = SpectralModel::new(KernelSpec::new(spec.family, sigma, lambda)?, d)?;
                    if let Some(c) = cutoff {
                        model = model.with_truncation(Truncation::Fixed(c));
                    }
                    let s = match &fourier {
                        Some(f) => model.bias_term(f)?,
                        None => f64::NAN,
                    };
                    let row = [
                        sigma,
                        lambda,
                        model.effective_dimension(1.0)?,
                        model.effective_dimension(2.0)?,
                        model.n_plus()?,
                        s,
                    ];
                    w.row(&row.map(Cell::F))?;
                }
            }
        }
        EffdimMethod::Empirical { points } => {
            if points < 2 {
                return Err(Error::Config("empirical effective dimensions need at least 2 points".into()));
            }
            let nodes = effdim_nodes(&spec.domain, points, cfg.seed())?;
            let m = nodes.n();
            let fvals: Option<Vec<f64>> = spec.target.as_ref().map(|t| nodes.iter().map(|x| t.eval(x)).collect());
            for &sigma in &spec.sigmas {
                let unit = KernelSpec::new(spec.family, sigma, 1.0)?;
                let eig = sym_eigen(&unit.evaluator(&spec.domain)?.gram(&nodes)?)?;
                // squared coefficients of f* on the L²-normalised eigenvectors
                let coef: Option<Vec<f64>> = fvals.as_ref().map(|f| {
                    (0..m).map(|j| {
                        let c: f64 = eig.vector(j).iter().zip(f).map(|(v, y)| v * y).sum();
                        c * c / m as f64
                    }).collect()
                });
                for &lambda in &spec.lambdas {
                    let (n1, n2) = empirical_effective_dimension(&eig.values, m, lambda);
                    let kernel = unit.with_lambda(lambda)?;
                    let n_plus = n_plus_empirical(&kernel, &spec.domain, &nodes)?;
                    let s = match &coef {
                        Some(c) => eig.values.iter().zip(c).map(|(e, c)| {
                            let shrink = 1.0 / (e.max(0.0) / m as f64 / lambda + 1.0);
                            c * shrink * shrink
                        }).sum(),
                        None => f64::NAN,
                    };
                    w.row(&[sigma, lambda, n1, n2, n_plus, s].map(Cell::F))?;
                }
            }
        }
    }
    Ok(())
}

fn bound_report(req: &BoundRequest) -> Result<BoundReport> {
    match req {
        BoundRequest::Taylor { d, alpha, eps, n } => taylor_lower_bound(*d, *alpha, *eps, *n),
        BoundRequest::Fourier { d, omega, eps, n } => fourier_lower_bound(*d, *omega, *eps, *n),
        BoundRequest::Ols { d, n, eps } => ols_minimax_bound(*d, *n, *eps),
        BoundRequest::Rate { alpha, d, big_d, eps, n } => rate_lower_bound(*alpha, *d, *big_d, *eps, *n),
        BoundRequest::SingleFrequency { beta, d, m, eps, n } => single_frequency_lower_bound(*beta, *d, m, *eps, *n),
        BoundRequest::Band { .. } => theorem_band(&req.band_inputs().expect("band request")),
    }
}

pub fn cmd_bounds(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let reqs = cfg.section(&cfg.bounds, "bounds")?;
    let reports = reqs.iter().map(bound_report).collect::<Result<Vec<_>>>()?;
    let mut w = CsvWriter::new(
        out,
        cfg,
        &["kind", "d", "alpha_or_beta", "omega", "eps", "n", "value", "center", "radius", "count"],
    )?;
    for r in &reports {
        let count = match r.count {
            Some(Count::Exact(c)) => Cell::U(c),
            Some(Count::Overflow { .. }) => Cell::S("overflow"),
            None => Cell::Empty,
        };
        let d = if r.inputs.d == 0 { Cell::Empty } else { Cell::from(r.inputs.d) };
        w.row(&[
            Cell::S(r.name),
            d,
            r.inputs.alpha_or_beta.into(),
            r.inputs.omega.into(),
            r.inputs.eps.into(),
            r.inputs.n.into(),
            r.value.into(),
            r.center.into(),
            r.radius.into(),
            count,
        ])?;
    }
    Ok(())
}

pub fn cmd_sweep(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let exp = cfg.section(&cfg.experiment, "experiment")?;
    exp.validate()?;
    let mut w = CsvWriter::new(
        out,
        cfg,
        &["n", "sigma", "lambda", "risk_mean", "risk_se", "N1_emp", "N2_emp", "high_sample", "excluded_runs"],
    )?;
    let mut write_err = None;
    let res = sweep_with(exp, &budget(cfg), |r| {
        if write_err.is_none() {
            let cells = [
                r.n.into(),
                r.sigma.into(),
                r.lambda.into(),
                r.risk_mean.into(),
                r.risk_se.into(),
                r.n1_emp.into(),
                r.n2_emp.into(),
                r.high_sample.into(),
                r.excluded_runs.into(),
            ];
            if let Err(e) = w.row(&cells) {
                write_err = Some(e);
            }
        }
    });
    if let Some(e) = write_err {
        return Err(e);
    }
    res.map(|_| ())
}

pub fn cmd_profile(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let exp = cfg.section(&cfg.experiment, "experiment")?;
    exp.validate()?;
    let mut w = CsvWriter::new(out, cfg, &["n", "sigma_best", "lambda_best", "risk_mean", "risk_se", "selection_rule"])?;
    let mut write_err = None;
    let res = profile_experiment_with(exp, &budget(cfg), |r| {
        if write_err.is_none() {
            let cells = [
                r.n.into(),
                r.sigma_best.into(),
                r.lambda_best.into(),
                r.risk_mean.into(),
                r.risk_se.into(),
                Cell::S(r.selection_rule),
            ];
            if let Err(e) = w.row(&cells) {
                write_err = Some(e);
            }
        }
    });
    if let Some(e) = write_err {
        return Err(e);
    }
    res.map(|_| ())
}

pub fn cmd_online(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let exp = cfg.section(&cfg.experiment, "experiment")?;
    let spec = cfg.section(&cfg.online, "online")?;
    let curve = online_growth_experiment(exp, spec.n_max, &spec.checkpoints)?;
    let mut w = CsvWriter::new(out, cfg, &["n", "risk", "scratch_risk", "online_mul_adds", "scratch_mul_adds"])?;
    for r in &curve.rows {
        let last = r.n == spec.n_max;
        w.row(&[
            r.n.into(),
            r.risk.into(),
            r.scratch_risk.into(),
            if last { Cell::U(curve.online_mul_adds as u128) } else { Cell::Empty },
            if last { Cell::U(curve.scratch_mul_adds as u128) } else { Cell::Empty },
        ])?;
    }
    Ok(())
}

pub fn cmd_weights(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let spec = cfg.section(&cfg.weights, "weights")?;
    spec.domain.validate()?;
    let anchors = Points::from_rows(&spec.anchors)?;
    let probes = Points::from_rows(&spec.probes)?;
    for p in anchors.iter().chain(probes.iter()) {
        spec.domain.check_point(p)?;
    }
    let d = spec.domain.dim();
    let prof = averaged_weight_profile(&spec.kernel, &spec.domain, spec.n, &anchors, &probes, spec.runs, cfg.seed())?;
    let model = match spec.domain {
        DomainSpec::Torus { .. } if spec.kernel.family().is_translation_invariant() => SpectralModel::new(spec.kernel, d).ok(),
        _ => None,
    };
    let mut header: Vec<String> = vec!["anchor".into(), "probe".into()];
    header.extend((0..d).map(|i| format!("x{i}")));
    header.extend(["weight_mean", "weight_se", "population_weight"].map(String::from));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut w = CsvWriter::new(out, cfg, &header)?;
    for a in 0..anchors.n() {
        for p in 0..probes.n() {
            let x = probes.point(p);
            let pop = match &model {
                Some(m) => Cell::F(population_weights(m, x, anchors.point(a))?),
                None => Cell::Empty,
            };
            let mut cells: Vec<Cell> = vec![a.into(), p.into()];
            cells.extend(x.iter().map(|&v| Cell::F(v)));
            cells.extend([Cell::F(prof.mean[a][p]), Cell::F(prof.std_error[a][p]), pop]);
            w.row(&cells)?;
        }
    }
    Ok(())
}

pub fn cmd_decomp(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let spec = cfg.section(&cfg.decomp, "decomp")?;
    spec.domain.validate()?;
    let exps = monomial_exponents(spec.domain.dim(), spec.degree);
    if spec.theta.len() != exps.len() {
        return Err(Error::Config(format!("theta needs {} coefficients, one per monomial", exps.len())));
    }
    if spec.n == 0 {
        return Err(Error::Config("decomp needs n >= 1".into()));
    }
    let mut rng = stream_rng(cfg.seed(), &[0x6465_636f, spec.n as u64]);
    let x = sample_inputs(&spec.domain, spec.n, &mut rng);
    let phi = polynomial_design(&x, &exps)?;
    let gram = polynomial_embedding_gram(&spec.domain, &exps)?;
    let r = bias_variance_oracle(&phi, &spec.theta, &gram, spec.eps)?;
    let mut w = CsvWriter::new(out, cfg, &["n", "p", "bias", "variance_trace", "noise", "total"])?;
    w.row(&[r.n.into(), exps.len().into(), r.bias.into(), r.variance_trace.into(), r.noise.into(), r.total.into()])
}
