use crate::error::{Error, Result};
use crate::kernels::{DomainSpec, KernelSpec, Points};
use crate::linalg::{sym_eigen, Cholesky};

/// (𝒩₁, 𝒩₂) over the plug-in spectrum μᵢ = eig(K̂)/n of a unit-scale Gram
/// matrix; eigenvalues down to -1e-9 are clamped to zero.
pub fn empirical_effective_dimension(gram_eigenvalues: &[f64], n: usize, lambda: f64) -> (f64, f64) {
    let mut n1 = crate::numeric::Neumaier::new();
    let mut n2 = crate::numeric::Neumaier::new();
    for &e in gram_eigenvalues {
        let mu = e.max(0.0) / n as f64;
        let r = mu / (mu + lambda);
        n1.add(r);
        n2.add(r * r);
    }
    (n1.value(), n2.value())
}

/// Plug-in φ(x)ᵀ(Σ̂ + λ)⁻¹φ(x) = λ⁻¹[k(x,x) - kₓᵀ(K̂ + mλ)⁻¹kₓ] with the
/// covariance estimated from `cov_sample`, maximised over `eval_points`.
/// A lower estimate of the essential supremum 𝒩₊.
pub fn n_plus_empirical_at(kernel: &KernelSpec, domain: &DomainSpec, cov_sample: &Points, eval_points: &Points) -> Result<f64> {
    let m = cov_sample.n();
    if m < 2 {
        return Err(Error::InvalidArgument("n_plus_empirical needs at least two sample points".into()));
    }
    let lambda = kernel.lambda();
    let ev = kernel.evaluator(domain)?;
    let mut a = ev.gram(cov_sample)?;
    a.add_diagonal(m as f64 * lambda);
    let chol = Cholesky::factor(&a)?;
    let mut best = f64::NEG_INFINITY;
    for x in eval_points.iter() {
        let mut kx = ev.column(cov_sample, x)?;
        let kxx = ev.eval(x, x)?;
        chol.forward_in_place(&mut kx);
        let quad: f64 = kx.iter().map(|v| v * v).sum();
        best = best.max((kxx - quad) / lambda);
    }
    Ok(best)
}

/// n_plus_empirical_at with the sample serving as its own evaluation set.
pub fn n_plus_empirical(kernel: &KernelSpec, domain: &DomainSpec, sample: &Points) -> Result<f64> {
    n_plus_empirical_at(kernel, domain, sample, sample)
}

/// Plug-in 𝒮 = Σᵢ ⟨f*, uᵢ⟩² / (μᵢ/λ + 1)² on an equal-weight node set,
/// with uᵢ the L²-normalised eigenvectors of K̂/m.
pub fn empirical_bias(kernel: &KernelSpec, domain: &DomainSpec, nodes: &Points, target_values: &[f64]) -> Result<f64> {
    let m = nodes.n();
    if target_values.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: target_values.len() });
    }
    let gram = kernel.evaluator(domain)?.gram(nodes)?;
    let eig = sym_eigen(&gram)?;
    let mut acc = crate::numeric::Neumaier::new();
    for (j, &e) in eig.values.iter().enumerate() {
        let mu = e.max(0.0) / m as f64;
        let c: f64 = eig.vector(j).iter().zip(target_values).map(|(v, f)| v * f).sum();
        let shrink = 1.0 / (mu / kernel.lambda() + 1.0);
        acc.add(c * c / m as f64 * shrink * shrink);
    }
    Ok(acc.value())
}
