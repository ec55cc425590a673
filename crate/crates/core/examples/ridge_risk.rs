//! Fit kernel ridge regression on a noisy sign target and estimate its
//! excess risk by Monte Carlo over training sets.

use kernel_regimes::experiments::{monte_carlo_risk, sample_inputs, sample_labels, stream_rng, ExperimentConfig};
use kernel_regimes::kernels::{DomainSpec, Family, KernelSpec};
use kernel_regimes::ridge::{excess_risk, fit, Dataset, QuadratureSpec};
use kernel_regimes::TargetFunction;

fn main() -> kernel_regimes::Result<()> {
    let domain = DomainSpec::cube(1, -1.0, 1.0);
    let target = TargetFunction::SignFirstCoord;
    let kernel = KernelSpec::gaussian(0.2, 1e-3)?;

    let mut rng = stream_rng(5, &[]);
    let x = sample_inputs(&domain, 64, &mut rng);
    let y = sample_labels(&target, &x, 0.3, &mut rng);
    let f = fit(&kernel, &domain, &Dataset::new(x, y, 5)?)?;
    println!("single fit: f(-0.5) = {:.3}, f(0.5) = {:.3}", f.predict(&[-0.5])?, f.predict(&[0.5])?);
    println!("single fit excess risk: {:.4}", excess_risk(&f, &target, &domain, &QuadratureSpec::Auto)?);

    let mut cfg = ExperimentConfig::new(domain, Family::Gaussian, target);
    cfg.sigmas = vec![0.2];
    cfg.lambdas = vec![1e-3];
    cfg.eps = 0.3;
    cfg.runs = 50;
    for n in [8, 32, 128] {
        let r = monte_carlo_risk(&cfg, n, 0, 0)?;
        println!("n = {n:>4}: risk {:.4} +- {:.4}", r.mean, r.std_error);
    }
    Ok(())
}
