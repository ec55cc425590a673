//! A small σ × λ × n sweep with the empirical 𝒩₁ next to each risk, and
//! the sample size where n crosses 𝒩₁.

use kernel_regimes::experiments::{sweep, transition_points, ExperimentConfig};
use kernel_regimes::kernels::{DomainSpec, Family};
use kernel_regimes::TargetFunction;

fn main() -> kernel_regimes::Result<()> {
    let mut cfg = ExperimentConfig::new(DomainSpec::cube(2, -1.0, 1.0), Family::Gaussian, TargetFunction::SignFirstCoord);
    cfg.sigmas = vec![2.0];
    cfg.lambdas = vec![8.1e-4, 1e-1];
    cfg.ns = vec![4, 8, 16, 32, 64];
    cfg.eps = 0.5;
    cfg.runs = 40;
    cfg.base_seed = 1;
    let table = sweep(&cfg)?;
    for r in &table.rows {
        println!(
            "sigma={} lambda={:.1e} n={:>3}: risk {:.4} +- {:.4}  N1={:.2}",
            r.sigma, r.lambda, r.n, r.risk_mean, r.risk_se, r.n1_emp
        );
    }
    for (s, l, n) in transition_points(&table) {
        println!("sigma={s} lambda={l:.1e}: n crosses N1 at {n:?}");
    }
    Ok(())
}
