//! Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned
//! below. Exits nonzero when any criterion fails.

use kernel_regimes::bounds::{bias_variance_oracle, taylor_lower_bound};
use kernel_regimes::cli::{cmd_profile, cmd_sweep, RunConfig, SCHEMA};
use kernel_regimes::experiments::{
    conditional_feature_risk, effdim_gram_eigenvalues, monte_carlo_risk, ols_risk, online_growth_experiment,
    profile_experiment, slope_fit, stream_rng, sample_inputs, ExperimentConfig,
};
use kernel_regimes::kernels::{
    monomial_exponents, polynomial_design, polynomial_embedding_gram, DomainSpec, Family, KernelSpec,
};
use kernel_regimes::linalg::{block_inverse_extend, sym_eigenvalues, Cholesky, Matrix, SymMatrix};
use kernel_regimes::ridge::{empirical_weights, fit, grid_nodes, Dataset};
use kernel_regimes::spectral::{
    empirical_effective_dimension, n_plus_empirical, polylog_l, FourierTarget, SpectralModel,
};
use kernel_regimes::TargetFunction;
use rand::Rng;
use rand_distr::StandardNormal;
use std::time::Instant;

// Pinned tolerances.
const C1_SE: f64 = 3.0;
const C2_REL: f64 = 1e-4;
const C3_SLOPE: (f64, f64) = (-0.25, 0.05);
const C3_LOG_REL: f64 = 0.05;
const C4_REL: f64 = 0.10;
const C5_SE: f64 = 2.0;
const C5_REL: f64 = 0.15;
const C6_SE: f64 = 2.0;
// Monte Carlo only on cells whose far sample size stays cheap
const C6_MAX_N: usize = 128;
const C7_STALL: f64 = 0.5;
const C7_DROP: f64 = 0.1;
const C8_REL: f64 = 1e-6;
const C8_SPEEDUP: f64 = 5.0;

struct Outcome {
    pass: bool,
    detail: String,
}

fn logspace(a: f64, b: f64, k: usize) -> Vec<f64> {
    (0..k).map(|i| 10f64.powf(a + (b - a) * i as f64 / (k - 1) as f64)).collect()
}

fn criterion_1() -> Outcome {
    let mut rng = stream_rng(101, &[]);
    let mut worst: f64 = 0.0;
    let mut all = true;
    for c in 0..10 {
        let d = 1 + rng.random_range(0..2usize);
        let degree = if d == 1 { rng.random_range(1..=9u32) } else { rng.random_range(1..=3u32) };
        let domain = if rng.random::<bool>() { DomainSpec::cube(d, -1.0, 1.0) } else { DomainSpec::torus(d) };
        let n = rng.random_range(8..=64usize);
        let eps = 0.2 + 1.8 * rng.random::<f64>();
        let exps = monomial_exponents(d, degree);
        let theta: Vec<f64> = exps.iter().map(|_| rng.sample(StandardNormal)).collect();
        let x = sample_inputs(&domain, n, &mut rng);
        let phi = polynomial_design(&x, &exps).unwrap();
        let g = polynomial_embedding_gram(&domain, &exps).unwrap();
        let exact = bias_variance_oracle(&phi, &theta, &g, eps).unwrap().total;
        let mc = conditional_feature_risk(&phi, &theta, &g, eps, 5000, 1000 + c).unwrap();
        let z = (mc.mean - exact).abs() / mc.std_error;
        worst = worst.max(z);
        all &= z <= C1_SE;
    }
    Outcome { pass: all, detail: format!("10 configs, worst |MC - exact| = {worst:.2} SE (limit {C1_SE})") }
}

fn criterion_2() -> Outcome {
    let m = 1024;
    let domain = DomainSpec::periodized_torus(1);
    let nodes = grid_nodes(&domain, m).unwrap().points;
    let mut worst: f64 = 0.0;
    for family in [Family::Gaussian, Family::Matern { beta: 2.0 }] {
        for sigma in [0.05, 0.1, 0.2] {
            let unit = KernelSpec::new(family, sigma, 1.0).unwrap();
            let eig = sym_eigenvalues(&unit.evaluator(&domain).unwrap().gram(&nodes).unwrap()).unwrap();
            for lambda in [1e-2, 1e-3, 1e-4] {
                let (n1_op, _) = empirical_effective_dimension(&eig, m, lambda);
                let model = SpectralModel::new(unit.with_lambda(lambda).unwrap(), 1).unwrap();
                let n1 = model.effective_dimension(1.0).unwrap();
                worst = worst.max((n1 - n1_op).abs() / n1);
            }
        }
    }
    Outcome { pass: worst <= C2_REL, detail: format!("18 (family, sigma, lambda) cells, worst relative gap {worst:.2e} (limit {C2_REL:.0e})") }
}

fn criterion_3() -> Outcome {
    let lambdas = logspace(-6.0, -2.0, 9);
    let pts: Vec<(f64, f64)> = lambdas
        .iter()
        .map(|&l| {
            let m = SpectralModel::new(KernelSpec::matern(2.0, 0.1, l).unwrap(), 1).unwrap();
            (l, m.effective_dimension(1.0).unwrap())
        })
        .collect();
    let slope = slope_fit(&pts).unwrap().slope;
    let slope_ok = (slope - C3_SLOPE.0).abs() <= C3_SLOPE.1;

    // Gaussian d = 2: 𝒩₁ ≈ c·L(q̂(0)σ²/λ) with L(x) = ln(1+x) and q̂(0) = π
    let sigma: f64 = 0.1;
    let exact: Vec<f64> = lambdas
        .iter()
        .map(|&l| SpectralModel::new(KernelSpec::gaussian(sigma, l).unwrap(), 2).unwrap().effective_dimension(1.0).unwrap())
        .collect();
    let shape: Vec<f64> = lambdas.iter().map(|&l| polylog_l(std::f64::consts::PI * sigma * sigma / l, 2)).collect();
    let c = exact.iter().zip(&shape).map(|(e, s)| (e / s).ln()).sum::<f64>() / exact.len() as f64;
    let c = c.exp();
    let worst = exact.iter().zip(&shape).map(|(e, s)| (c * s / e - 1.0).abs()).fold(0.0, f64::max);
    let log_ok = worst <= C3_LOG_REL;
    Outcome {
        pass: slope_ok && log_ok,
        detail: format!(
            "Matern(2) d=1 slope {slope:.4} (target -0.25 +- 0.05); Gaussian d=2 fitted c = {c:.3} (1/(pi sigma^2) = {:.3}), worst deviation {:.2}% (limit 5%)",
            1.0 / (std::f64::consts::PI * sigma * sigma),
            100.0 * worst
        ),
    }
}

fn criterion_4() -> Outcome {
    let domain = DomainSpec::cube(1, -1.0, 1.0);
    let nodes = grid_nodes(&domain, 1024).unwrap().points;
    let mut vals = Vec::new();
    for (sigma, target) in [(0.1, 45.0), (0.05, 85.0)] {
        let unit = KernelSpec::gaussian(sigma, 1.0).unwrap();
        let eig = sym_eigenvalues(&unit.evaluator(&domain).unwrap().gram(&nodes).unwrap()).unwrap();
        let (n1, n2) = empirical_effective_dimension(&eig, nodes.n(), 1e-5);
        vals.push((sigma, target, n1, n2));
    }
    let pass = vals.iter().all(|&(_, t, _, n2)| (n2 - t).abs() <= C4_REL * t);
    let detail = vals
        .iter()
        .map(|(s, t, n1, n2)| format!("sigma={s}: N2 = {n2:.2} vs {t} +- 10% (N1 = {n1:.2})"))
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { pass, detail }
}

fn criterion_5() -> Outcome {
    let ols = ols_risk(5, 20, 1.0, 2000, 55).unwrap();
    let exact = 5.0 / 14.0;
    let ols_ok = ols.mean >= 0.3125 - C5_SE * ols.std_error && (ols.mean - exact).abs() <= C5_REL * exact;
    let mut detail = format!("OLS d=5 n=20: {:.4} +- {:.4} (bound 0.3125, exact 5/14 = {exact:.4})", ols.mean, ols.std_error);
    let mut poly_ok = true;
    for d in 1..=3usize {
        let p = kernel_regimes::kernels::monomial_count(d, 5).unwrap() as usize;
        let mut cfg = ExperimentConfig::new(
            DomainSpec::cube(d, -1.0, 1.0),
            Family::Polynomial { degree: 5, normalizer: 1.0 },
            TargetFunction::LegendreQuintic,
        );
        cfg.sigmas = vec![1.0];
        cfg.lambdas = vec![1e-9];
        cfg.ns = vec![4 * p, 8 * p];
        cfg.eps = 1e-2;
        cfg.runs = 40;
        cfg.base_seed = 5;
        for &n in &cfg.ns {
            let est = monte_carlo_risk(&cfg, n, 0, 0).unwrap();
            let bound = taylor_lower_bound(d as u64, 5, cfg.eps, n as f64).unwrap().value;
            let ok = est.mean >= bound - C5_SE * est.std_error;
            poly_ok &= ok;
            detail.push_str(&format!("; d={d} n={n}: {:.3e} vs bound {bound:.3e}", est.mean));
        }
    }
    Outcome { pass: ols_ok && poly_ok, detail }
}

fn criterion_6() -> Outcome {
    let mut cfg = ExperimentConfig::new(DomainSpec::cube(2, -1.0, 1.0), Family::Gaussian, TargetFunction::SignFirstCoord);
    cfg.sigmas = logspace(0.05f64.log10(), 2f64.log10(), 8);
    cfg.lambdas = logspace(-6.0, 2.0, 12);
    cfg.ns = (3..=11).map(|k| 1usize << k).collect();
    cfg.eps = 0.5;
    cfg.runs = 100;
    cfg.base_seed = 7;
    let (m, eigs) = effdim_gram_eigenvalues(&cfg).unwrap();
    // cells whose n ≈ 𝒩₁ and n ≥ 4𝒩₁ both lie on the n-grid, cheapest first
    let mut cands = Vec::new();
    for si in 0..cfg.sigmas.len() {
        for li in 0..cfg.lambdas.len() {
            let n1 = empirical_effective_dimension(&eigs[si], m, cfg.lambdas[li]).0;
            let near = *cfg
                .ns
                .iter()
                .min_by(|a, b| ((**a as f64) / n1).ln().abs().total_cmp(&((**b as f64) / n1).ln().abs()))
                .unwrap();
            if ((near as f64) / n1).ln().abs() > std::f64::consts::LN_2 / 2.0 {
                continue;
            }
            if let Some(&far) = cfg.ns.iter().find(|&&n| n as f64 >= 4.0 * n1) {
                cands.push((far, si, li, near, n1));
            }
        }
    }
    cands.sort_by_key(|c| c.0);
    let tried = cands.iter().filter(|c| c.0 <= C6_MAX_N && c.4 >= 4.0).count();
    let mut best: Option<((bool, f64), String)> = None;
    let mut bumps = 0;
    for &(far, si, li, near, n1) in cands.iter().filter(|c| c.0 <= C6_MAX_N && c.4 >= 4.0) {
        let a = monte_carlo_risk(&cfg, near, si, li).unwrap();
        let b = monte_carlo_risk(&cfg, far, si, li).unwrap();
        let z = (a.mean - b.mean) / a.std_error.hypot(b.std_error);
        // a visible peak also needs risk to rise into n ≈ 𝒩₁ from the grid point below
        let rising = match cfg.ns.iter().rev().find(|&&n| n < near) {
            Some(&below) => {
                let c = monte_carlo_risk(&cfg, below, si, li).unwrap();
                (a.mean - c.mean) / a.std_error.hypot(c.std_error) > C6_SE
            }
            None => false,
        };
        bumps += usize::from(rising && z > C6_SE);
        let text = format!(
            "sigma={:.3} lambda={:.2e} N1={n1:.1}: risk(n={near}) = {:.4} +- {:.4}, risk(n={far}) = {:.4} +- {:.4}, gap {z:.1} SE, rising into N1: {rising}",
            cfg.sigmas[si], cfg.lambdas[li], a.mean, a.std_error, b.mean, b.std_error
        );
        let key = (rising && z > C6_SE, z);
        if best.as_ref().is_none_or(|(bk, _)| key.0 > bk.0 || key.0 == bk.0 && key.1 > bk.1) {
            best = Some((key, text));
        }
    }
    match best {
        Some(((_, z), text)) => Outcome {
            pass: z > C6_SE,
            detail: format!("{tried} candidate cells, {bumps} with a two-sided peak; best {text}"),
        },
        None => Outcome { pass: false, detail: "no grid cell has both n ~ N1 and n >= 4 N1 on the n-grid".into() },
    }
}

fn criterion_7() -> Outcome {
    let mut cfg = ExperimentConfig::new(DomainSpec::torus(1), Family::Gaussian, TargetFunction::Cosine { frequency: vec![20.0] });
    cfg.sigmas = logspace(-2.5, -0.5, 8);
    cfg.lambdas = logspace(-8.0, 1.0, 10);
    cfg.ns = vec![5, 20, 40, 200];
    cfg.eps = 0.1;
    cfg.runs = 100;
    cfg.base_seed = 13;
    let rows = profile_experiment(&cfg).unwrap();
    let r = |n: usize| rows.iter().find(|row| row.n == n).unwrap().risk_mean;
    let stall = r(20) / r(5);
    let drop = r(200) / r(40);
    Outcome {
        pass: stall >= C7_STALL && drop <= C7_DROP,
        detail: format!(
            "risk(5) = {:.4}, risk(20) = {:.4}, risk(40) = {:.4}, risk(200) = {:.2e}; stall ratio {stall:.3} (>= 0.5), drop ratio {drop:.4} (<= 0.1)",
            r(5),
            r(20),
            r(40),
            r(200)
        ),
    }
}

fn criterion_8() -> Outcome {
    let mut cfg = ExperimentConfig::new(DomainSpec::torus(1), Family::Gaussian, TargetFunction::Cosine { frequency: vec![3.0] });
    cfg.sigmas = vec![0.1];
    cfg.lambdas = vec![1e-3];
    cfg.ns = vec![1024];
    cfg.eps = 0.1;
    cfg.base_seed = 21;
    let checkpoints: Vec<usize> = (0..=10).map(|k| 1 << k).chain([3, 100, 777]).collect();
    let curve = online_growth_experiment(&cfg, 1024, &checkpoints).unwrap();
    let worst = curve
        .rows
        .iter()
        .filter_map(|r| r.scratch_risk.map(|s| (r.risk - s).abs() / s))
        .fold(0.0, f64::max);
    let speedup = curve.scratch_mul_adds as f64 / curve.online_mul_adds as f64;
    Outcome {
        pass: worst <= C8_REL && speedup >= C8_SPEEDUP,
        detail: format!(
            "{} checkpoints, worst relative risk gap {worst:.2e} (limit 1e-6); mul-adds online {} vs scratch {} ({speedup:.1}x, need 5x)",
            checkpoints.len(),
            curve.online_mul_adds,
            curve.scratch_mul_adds
        ),
    }
}

fn criterion_9() -> Outcome {
    let mut rng = stream_rng(909, &[]);
    let mut notes = Vec::new();

    // 𝒩₂ ≤ 𝒩₁ ≤ 𝒩₊
    let mut order_ok = true;
    for c in 0..50 {
        let sigma = 10f64.powf(rng.random_range(-1.5..-0.3));
        let lambda = 10f64.powf(rng.random_range(-5.0..-1.0));
        if c % 2 == 0 {
            let d = 1 + c % 3 / 2;
            let family = [Family::Gaussian, Family::Matern { beta: 2.0 }, Family::Matern { beta: 3.0 }][c % 3];
            let m = SpectralModel::new(KernelSpec::new(family, sigma, lambda).unwrap(), d).unwrap();
            let (n1, n2, np) = (m.effective_dimension(1.0).unwrap(), m.effective_dimension(2.0).unwrap(), m.n_plus().unwrap());
            order_ok &= n2 <= n1 && n1 <= np * (1.0 + 1e-12);
        } else {
            let domain = DomainSpec::cube(1 + c % 2, -1.0, 1.0);
            let k = KernelSpec::gaussian(sigma, lambda).unwrap();
            let x = sample_inputs(&domain, 120, &mut rng);
            let eig = sym_eigenvalues(&k.with_lambda(1.0).unwrap().evaluator(&domain).unwrap().gram(&x).unwrap()).unwrap();
            let (n1, n2) = empirical_effective_dimension(&eig, x.n(), lambda);
            let np = n_plus_empirical(&k, &domain, &x).unwrap();
            order_ok &= n2 <= n1 && n1 <= np * (1.0 + 1e-9);
        }
    }
    notes.push(format!("N2<=N1<=N+ on 50 configs: {order_ok}"));

    // 𝒩 decreasing and 𝒮 increasing in λ
    let target = FourierTarget::profile(1, 1.0, 3.0).unwrap();
    let mut mono_ok = true;
    for family in [Family::Gaussian, Family::Matern { beta: 2.0 }] {
        let mut prev: Option<(f64, f64, f64)> = None;
        for l in logspace(-6.0, 0.0, 13) {
            let m = SpectralModel::new(KernelSpec::new(family, 0.1, l).unwrap(), 1).unwrap();
            let cur = (m.effective_dimension(1.0).unwrap(), m.effective_dimension(2.0).unwrap(), m.bias_term(&target).unwrap());
            if let Some(p) = prev {
                mono_ok &= cur.0 < p.0 && cur.1 < p.1 && cur.2 > p.2;
            }
            prev = Some(cur);
        }
    }
    notes.push(format!("monotone in lambda: {mono_ok}"));

    // f(x) = Σ Yᵢ α̂ᵢ(x)
    let mut weight_gap: f64 = 0.0;
    for c in 0..5u64 {
        let domain = DomainSpec::periodized_torus(1 + c as usize % 2);
        let k = KernelSpec::matern(2.0 + 0.5 * (c % 2) as f64, 0.2, 1e-3).unwrap();
        let x = sample_inputs(&domain, 40, &mut rng);
        let y: Vec<f64> = (0..40).map(|_| rng.sample(StandardNormal)).collect();
        let f = fit(&k, &domain, &Dataset::new(x.clone(), y.clone(), c).unwrap()).unwrap();
        for _ in 0..5 {
            let p: Vec<f64> = (0..domain.dim()).map(|_| rng.random()).collect();
            let w = empirical_weights(&k, &domain, &x, &p).unwrap();
            let via_w: f64 = w.iter().zip(&y).map(|(a, b)| a * b).sum();
            let direct = f.predict(&p).unwrap();
            weight_gap = weight_gap.max((via_w - direct).abs() / direct.abs().max(1e-3));
        }
    }
    let weight_ok = weight_gap <= 1e-9;
    notes.push(format!("weight identity gap {weight_gap:.1e}"));

    // bordered growth vs direct inverse
    let n = 40;
    let b = Matrix::from_fn(n, n, |_, _| rng.random::<f64>() - 0.5);
    let mut a = b.gram();
    a.add_diagonal(1.0);
    let mut inv = SymMatrix::identity(0);
    for k in 0..n {
        let col: Vec<f64> = (0..k).map(|i| a.get(i, k)).collect();
        inv = block_inverse_extend(&inv, &col, a.get(k, k)).unwrap();
    }
    let direct = Cholesky::factor(&a).unwrap().inverse();
    let mut block_gap: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            block_gap = block_gap.max((inv.get(i, j) - direct.get(i, j)).abs());
        }
    }
    let block_ok = block_gap <= 1e-10 * direct.as_matrix().max_abs();
    notes.push(format!("block inverse gap {block_gap:.1e}"));

    // byte-identical CSV on rerun
    let cfg_text = format!(
        r#"{{"schema":"{SCHEMA}","base_seed":4,"experiment":{{"domain":{{"kind":"torus","d":1}},"family":{{"type":"gaussian"}},
        "sigmas":[0.05,0.2],"lambdas":[1e-4,1e-2],"ns":[10,40],"target":{{"kind":"cosine","frequency":[2.0]}},"eps":0.3,"runs":20}}}}"#
    );
    let cfg = RunConfig::from_json(&cfg_text).unwrap().resolve(None, None, None);
    let run = |f: fn(&RunConfig, &mut dyn std::io::Write) -> kernel_regimes::Result<()>| {
        let mut buf = Vec::new();
        f(&cfg, &mut buf).unwrap();
        buf
    };
    let det_ok = run(cmd_sweep) == run(cmd_sweep) && run(cmd_profile) == run(cmd_profile);
    notes.push(format!("byte-identical reruns: {det_ok}"));

    Outcome { pass: order_ok && mono_ok && weight_ok && block_ok && det_ok, detail: notes.join("; ") }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 exact bias-variance identity", criterion_1),
        ("2 spectral equivalence", criterion_2),
        ("3 capacity scaling", criterion_3),
        ("4 reference effective dimensions", criterion_4),
        ("5 lower-bound dominance", criterion_5),
        ("6 double descent", criterion_6),
        ("7 slow-then-fast profile", criterion_7),
        ("8 online solver", criterion_8),
        ("9 invariant suite", criterion_9),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        let t = Instant::now();
        let out = f();
        let secs = t.elapsed().as_secs_f64();
        println!("criterion {name}: {} [{secs:.1}s] {}", if out.pass { "PASS" } else { "FAIL" }, out.detail);
        failed += usize::from(!out.pass);
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
