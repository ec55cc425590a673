//! Risk profile under tuned hyperparameters, with oracle and
//! cross-validated selection.

use kernel_regimes::experiments::{profile_experiment, ExperimentConfig, Selection};
use kernel_regimes::kernels::{DomainSpec, Family};
use kernel_regimes::TargetFunction;

fn main() -> kernel_regimes::Result<()> {
    let mut cfg = ExperimentConfig::new(
        DomainSpec::periodized_torus(1),
        Family::Gaussian,
        TargetFunction::Cosine { frequency: vec![5.0] },
    );
    cfg.sigmas = vec![0.02, 0.05, 0.1, 0.3];
    cfg.lambdas = vec![1e-6, 1e-4, 1e-2];
    cfg.ns = vec![8, 32, 128];
    cfg.eps = 0.1;
    cfg.runs = 20;
    for selection in [Selection::Oracle, Selection::CrossValidation { folds: 4 }] {
        cfg.selection = selection;
        for r in profile_experiment(&cfg)? {
            println!(
                "{:>6} n={:>4}: risk {:.4e} +- {:.1e} at sigma={} lambda={:.0e}",
                r.selection_rule, r.n, r.risk_mean, r.risk_se, r.sigma_best, r.lambda_best
            );
        }
    }
    Ok(())
}
