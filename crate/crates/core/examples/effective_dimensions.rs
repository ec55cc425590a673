//! Effective dimensions of Gaussian and Matérn kernels on the circle,
//! from the torus spectrum and from a Gram matrix on a midpoint grid.

use kernel_regimes::kernels::{DomainSpec, KernelSpec};
use kernel_regimes::linalg::sym_eigenvalues;
use kernel_regimes::ridge::grid_nodes;
use kernel_regimes::spectral::{empirical_effective_dimension, FourierTarget, SpectralModel};

fn main() -> kernel_regimes::Result<()> {
    let domain = DomainSpec::periodized_torus(1);
    let nodes = grid_nodes(&domain, 512)?.points;
    let target = FourierTarget::single_cosine(&[3])?;
    println!("{:>8} {:>8} {:>10} {:>10} {:>10} {:>12}", "kernel", "lambda", "N1", "N2", "N1 (gram)", "S");
    for unit in [KernelSpec::gaussian(0.1, 1.0)?, KernelSpec::matern(2.0, 0.1, 1.0)?] {
        let eig = sym_eigenvalues(&unit.gram(&domain, &nodes)?)?;
        for lambda in [1e-2, 1e-4, 1e-6] {
            let model = SpectralModel::new(unit.with_lambda(lambda)?, 1)?;
            let (gram_n1, _) = empirical_effective_dimension(&eig, nodes.n(), lambda);
            println!(
                "{:>8} {:>8.0e} {:>10.4} {:>10.4} {:>10.4} {:>12.4e}",
                unit.family().name(),
                lambda,
                model.effective_dimension(1.0)?,
                model.effective_dimension(2.0)?,
                gram_n1,
                model.bias_term(&target)?
            );
        }
    }
    Ok(())
}
