use kernel_regimes::bounds::bias_variance_oracle;
use kernel_regimes::experiments::{
    conditional_feature_risk, monte_carlo_risk, online_growth_experiment, ols_risk, sample_inputs, sample_labels,
    slope_fit, stream_rng, sweep, sweep_with, transition_points, Budget, ExperimentConfig,
};
use kernel_regimes::kernels::{DomainSpec, Family};
use kernel_regimes::linalg::{Matrix, SymMatrix};
use kernel_regimes::{Error, TargetFunction};

fn torus_config() -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(DomainSpec::periodized_torus(1), Family::Gaussian, TargetFunction::Cosine { frequency: vec![2.0] });
    cfg.sigmas = vec![0.1, 0.3];
    cfg.lambdas = vec![1e-4, 1e-2];
    cfg.ns = vec![4, 16, 64];
    cfg.eps = 0.3;
    cfg.runs = 20;
    cfg.base_seed = 3;
    cfg
}

#[test]
fn constant_feature_risk_matches_closed_form() {
    // bias 1/4 and variance 1/(4n) for θ* = 1, ε = 1
    let n = 25;
    let phi = Matrix::new(n, 1, vec![1.0; n]).unwrap();
    let g = SymMatrix::identity(1);
    let exact = bias_variance_oracle(&phi, &[1.0], &g, 1.0).unwrap().total;
    assert!((exact - (0.25 + 0.25 / n as f64)).abs() < 1e-15);
    let mc = conditional_feature_risk(&phi, &[1.0], &g, 1.0, 20_000, 9).unwrap();
    assert!((mc.mean - exact).abs() <= 3.0 * mc.std_error, "{} +- {} vs {exact}", mc.mean, mc.std_error);
}

#[test]
fn heavy_regularisation_with_zero_target_predicts_nothing() {
    let mut cfg = torus_config();
    cfg.target = TargetFunction::Zero;
    cfg.lambdas = vec![1e8];
    cfg.eps = 1.0;
    let r = monte_carlo_risk(&cfg, 32, 0, 0).unwrap();
    assert!(r.mean < 1e-14, "{}", r.mean);
}

#[test]
fn sampled_moments_are_uniform() {
    let mut rng = stream_rng(1, &[]);
    let x = sample_inputs(&DomainSpec::torus(1), 200_000, &mut rng);
    let n = x.n() as f64;
    let mean = x.data().iter().sum::<f64>() / n;
    let var = x.data().iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    assert!((mean - 0.5).abs() < 0.005);
    assert!((var - 1.0 / 12.0).abs() < 0.002);

    let y = sample_labels(&TargetFunction::Zero, &x, 2.0, &mut rng);
    let v = y.iter().map(|t| t * t).sum::<f64>() / n;
    assert!((v - 4.0).abs() < 0.05);
}

#[test]
fn ols_risk_decays_like_one_over_n() {
    let pts: Vec<(f64, f64)> = [40usize, 80, 160, 320, 640]
        .iter()
        .map(|&n| (n as f64, ols_risk(3, n, 1.0, 400, 17).unwrap().mean))
        .collect();
    let fit = slope_fit(&pts).unwrap();
    assert!((fit.slope + 1.0).abs() < 0.15, "slope {}", fit.slope);
}

#[test]
fn risk_is_reproducible_and_seed_dependent() {
    let cfg = torus_config();
    let a = monte_carlo_risk(&cfg, 16, 1, 0).unwrap();
    let b = monte_carlo_risk(&cfg, 16, 1, 0).unwrap();
    assert_eq!(a.mean.to_bits(), b.mean.to_bits());
    let mut other = cfg.clone();
    other.base_seed += 1;
    assert_ne!(monte_carlo_risk(&other, 16, 1, 0).unwrap().mean, a.mean);
}

#[test]
fn sweep_visits_every_cell_in_order() {
    let cfg = torus_config();
    let t = sweep(&cfg).unwrap();
    assert_eq!(t.rows.len(), cfg.cells());
    assert_eq!((t.rows[0].sigma, t.rows[0].lambda, t.rows[0].n), (0.1, 1e-4, 4));
    assert_eq!((t.rows[3].sigma, t.rows[3].lambda, t.rows[3].n), (0.1, 1e-2, 4));
    assert!(t.rows.iter().all(|r| r.risk_mean >= 0.0 && r.n1_emp >= r.n2_emp));
    let trans = transition_points(&t);
    assert_eq!(trans.len(), 4);
    for (s, l, hit) in trans {
        let cell: Vec<_> = t.rows.iter().filter(|r| r.sigma == s && r.lambda == l).collect();
        let first = cell[0].n as f64 - cell[0].n1_emp;
        let last = cell[cell.len() - 1].n as f64 - cell[cell.len() - 1].n1_emp;
        assert_eq!(hit.is_some(), first * last <= 0.0);
    }
}

#[test]
fn budget_stops_after_the_allowed_cells() {
    let cfg = torus_config();
    let mut seen = 0;
    let err = sweep_with(&cfg, &Budget::unlimited().with_max_cells(5), |_| seen += 1).unwrap_err();
    assert!(matches!(err, Error::BudgetExceeded { completed: 5 }), "{err:?}");
    assert_eq!(seen, 5);
}

#[test]
fn invalid_grids_are_rejected() {
    let mut cfg = torus_config();
    cfg.ns.clear();
    assert!(cfg.validate().is_err());
    let mut cfg = torus_config();
    cfg.lambdas = vec![-1.0];
    assert!(cfg.validate().is_err());
}

#[test]
fn online_growth_agrees_with_refits() {
    let mut cfg = torus_config();
    cfg.sigmas = vec![0.2];
    cfg.lambdas = vec![1e-3];
    let curve = online_growth_experiment(&cfg, 64, &[1, 7, 32, 64]).unwrap();
    assert_eq!(curve.rows.len(), 64);
    for r in &curve.rows {
        if let Some(s) = r.scratch_risk {
            assert!((r.risk - s).abs() <= 1e-9 * s.max(1e-12), "n={}: {} vs {s}", r.n, r.risk);
        }
    }
    assert_eq!(curve.rows.iter().filter(|r| r.scratch_risk.is_some()).count(), 4);
    assert!(curve.online_mul_adds < curve.scratch_mul_adds);
}
