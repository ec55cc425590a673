//! Grow a ridge solution one sample at a time through bordered inverses
//! and compare against refitting from scratch.

use kernel_regimes::experiments::{online_growth_experiment, ExperimentConfig};
use kernel_regimes::kernels::{DomainSpec, Family};
use kernel_regimes::TargetFunction;

fn main() -> kernel_regimes::Result<()> {
    let mut cfg = ExperimentConfig::new(
        DomainSpec::periodized_torus(1),
        Family::Gaussian,
        TargetFunction::Cosine { frequency: vec![3.0] },
    );
    cfg.sigmas = vec![0.1];
    cfg.lambdas = vec![1e-3];
    cfg.eps = 0.1;
    let curve = online_growth_experiment(&cfg, 256, &[16, 64, 256])?;
    for r in curve.rows.iter().filter(|r| r.scratch_risk.is_some()) {
        println!("n={:>4}: online {:.6e}, scratch {:.6e}", r.n, r.risk, r.scratch_risk.unwrap());
    }
    println!(
        "mul-adds: online {}, scratch {} (jitter steps {})",
        curve.online_mul_adds, curve.scratch_mul_adds, curve.jitter_steps
    );
    Ok(())
}
