//! Equivalent-kernel weights: the empirical α̂ᵢ(x) from a single fit and
//! the population weight on the torus.

use kernel_regimes::experiments::{sample_inputs, stream_rng};
use kernel_regimes::kernels::{DomainSpec, KernelSpec};
use kernel_regimes::ridge::{empirical_weights, population_weights};
use kernel_regimes::spectral::SpectralModel;

fn main() -> kernel_regimes::Result<()> {
    let domain = DomainSpec::periodized_torus(1);
    let n = 200;
    let kernel = KernelSpec::matern(2.0, 0.1, 1e-3)?;
    let x = sample_inputs(&domain, n, &mut stream_rng(3, &[]));
    let w = empirical_weights(&kernel, &domain, &x, &[0.5])?;
    let model = SpectralModel::new(kernel, 1)?;
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| (x.point(a)[0] - 0.5).abs().total_cmp(&(x.point(b)[0] - 0.5).abs()));
    println!("{:>8} {:>12} {:>12}", "x_i", "n * w_i", "population");
    for &i in idx.iter().take(8) {
        let pop = population_weights(&model, x.point(i), &[0.5])?;
        println!("{:>8.4} {:>12.4} {:>12.4}", x.point(i)[0], n as f64 * w[i], pop);
    }
    println!("sum of weights: {:.4}", w.iter().sum::<f64>());
    Ok(())
}
