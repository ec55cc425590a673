use super::config::{Budget, ExperimentConfig};
use super::risk::{cell_risk, risk_nodes, RiskEstimate};
use super::sampling::{sample_inputs, stream_rng};
use crate::error::{Error, Result};
use crate::kernels::{DomainSpec, Points};
use crate::linalg::sym_eigenvalues;
use crate::ridge::grid_nodes;
use crate::spectral::empirical_effective_dimension;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub sigma: f64,
    pub lambda: f64,
    pub risk_mean: f64,
    pub risk_se: f64,
    pub n1_emp: f64,
    pub n2_emp: f64,
    pub high_sample: bool,
    pub excluded_runs: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

/// Quadrature nodes behind the empirical effective dimensions: a midpoint
/// grid of about `points` nodes on tori and cubes with d ≤ 2, i.i.d. draws
/// otherwise.
pub fn effdim_nodes(domain: &DomainSpec, points: usize, seed: u64) -> Result<Points> {
    let d = domain.dim();
    match domain {
        DomainSpec::Torus { .. } | DomainSpec::Cube { .. } if d <= 2 => {
            let per_axis = (points as f64).powf(1.0 / d as f64).round().max(1.0) as usize;
            Ok(grid_nodes(domain, per_axis)?.points)
        }
        _ => {
            let mut rng = stream_rng(seed, &[0x6566_6664]);
            Ok(sample_inputs(domain, points, &mut rng))
        }
    }
}

/// Eigenvalues of the unit-scale Gram matrix on the effective-dimension
/// nodes, one vector per σ of the grid. (𝒩₁, 𝒩₂) at λ follow from
/// `empirical_effective_dimension(eigs, nodes, λ)`.
pub fn effdim_gram_eigenvalues(config: &ExperimentConfig) -> Result<(usize, Vec<Vec<f64>>)> {
    let nodes = effdim_nodes(&config.domain, config.effdim_points, config.base_seed)?;
    let eigs = config
        .sigmas
        .iter()
        .map(|&s| {
            let ev = config.kernel(s, 1.0)?.evaluator(&config.domain)?;
            sym_eigenvalues(&ev.gram(&nodes)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((nodes.n(), eigs))
}

/// Full sweep without limits.
pub fn sweep(config: &ExperimentConfig) -> Result<SweepTable> {
    let mut table = SweepTable::default();
    sweep_with(config, &Budget::unlimited(), |row| table.rows.push(row.clone()))?;
    Ok(table)
}

/// Sweep over σ × λ × n in that nesting order, handing each finished row
/// to `sink`. On budget exhaustion the rows already handed out are the
/// partial result and `BudgetExceeded` is returned.
pub fn sweep_with<F: FnMut(&SweepRow)>(config: &ExperimentConfig, budget: &Budget, mut sink: F) -> Result<usize> {
    config.validate()?;
    let nodes = risk_nodes(config)?;
    let (m, eigs) = effdim_gram_eigenvalues(config)?;
    let mut done = 0;
    for (si, &sigma) in config.sigmas.iter().enumerate() {
        for (li, &lambda) in config.lambdas.iter().enumerate() {
            let (n1, n2) = empirical_effective_dimension(&eigs[si], m, lambda);
            for &n in &config.ns {
                budget.check(done)?;
                // a cell whose every run is numerically singular is reported as NaN
                let est = match cell_risk(config, &nodes, n, si, li, false) {
                    Ok(e) => e,
                    Err(Error::SingularSystem { .. }) => RiskEstimate {
                        mean: f64::NAN,
                        std_error: f64::NAN,
                        runs: 0,
                        excluded: config.runs,
                        values: None,
                    },
                    Err(e) => return Err(e),
                };
                sink(&SweepRow {
                    n,
                    sigma,
                    lambda,
                    risk_mean: est.mean,
                    risk_se: est.std_error,
                    n1_emp: n1,
                    n2_emp: n2,
                    high_sample: n2 <= n as f64,
                    excluded_runs: est.excluded,
                });
                done += 1;
            }
        }
    }
    Ok(done)
}

/// For each (σ, λ) of a table, the sample size where n - 𝒩₁ changes sign,
/// by linear interpolation along the n-axis; None when it keeps a sign.
pub fn transition_points(table: &SweepTable) -> Vec<(f64, f64, Option<f64>)> {
    let mut out: Vec<(f64, f64, Option<f64>)> = Vec::new();
    let mut i = 0;
    while i < table.rows.len() {
        let (s, l) = (table.rows[i].sigma, table.rows[i].lambda);
        let mut j = i;
        while j < table.rows.len() && table.rows[j].sigma == s && table.rows[j].lambda == l {
            j += 1;
        }
        let cell = &table.rows[i..j];
        let mut hit = None;
        for w in cell.windows(2) {
            let g0 = w[0].n as f64 - w[0].n1_emp;
            let g1 = w[1].n as f64 - w[1].n1_emp;
            if g0 == 0.0 {
                hit = Some(w[0].n as f64);
                break;
            }
            if g0 * g1 <= 0.0 && g0 != g1 {
                let t = g0 / (g0 - g1);
                hit = Some(w[0].n as f64 + t * (w[1].n as f64 - w[0].n as f64));
                break;
            }
        }
        out.push((s, l, hit));
        i = j;
    }
    out
}
