use crate::error::{Error, Result};
use crate::linalg::{Cholesky, Matrix, SymMatrix};
use serde::Serialize;

/// Conditional bias and variance of ridge regression with unit
/// regularisation in a finite feature space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub bias: f64,
    pub variance_trace: f64,
    pub noise: f64,
    pub n: usize,
    pub total: f64,
}

/// ℬₙ = θ*ᵀ(Σₙ+1)⁻¹Σ(Σₙ+1)⁻¹θ*, 𝒱ₙ = tr(Σ(Σₙ+1)⁻²Σₙ) with Σₙ = ΦᵀΦ/n,
/// total = ℬₙ + ε²𝒱ₙ/n = E[‖θₙ - θ*‖²_Σ | X] for θₙ = (ΦᵀΦ + nI)⁻¹ΦᵀY.
pub fn bias_variance_oracle(features: &Matrix, theta: &[f64], embedding_gram: &SymMatrix, eps: f64) -> Result<DecompositionReport> {
    let (n, p) = (features.rows(), features.cols());
    if theta.len() != p {
        return Err(Error::DimensionMismatch { expected: p, found: theta.len() });
    }
    if embedding_gram.n() != p {
        return Err(Error::DimensionMismatch { expected: p, found: embedding_gram.n() });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("design must have at least one row".into()));
    }
    let sigma_n = features.gram().scaled(1.0 / n as f64);
    let mut a = sigma_n.clone();
    a.add_diagonal(1.0);
    let a_inv = Cholesky::factor(&a)?.inverse();
    let sig = embedding_gram.as_matrix();

    // bias: v = A⁻¹θ*, vᵀΣv
    let v = a_inv.matvec(theta)?;
    let sv = sig.matvec(&v)?;
    let bias: f64 = v.iter().zip(&sv).map(|(a, b)| a * b).sum();

    // variance: tr(Σ A⁻¹ A⁻¹ Σₙ)
    let ai = a_inv.as_matrix();
    let m = sig.matmul(ai)?.matmul(ai)?.matmul(sigma_n.as_matrix())?;
    let variance_trace: f64 = (0..p).map(|i| m[(i, i)]).sum();

    let noise = eps * eps;
    Ok(DecompositionReport { bias, variance_trace, noise, n, total: bias + noise * variance_trace / n as f64 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_feature() {
        let phi = Matrix::new(7, 1, vec![1.0; 7]).unwrap();
        let g = SymMatrix::identity(1);
        let r = bias_variance_oracle(&phi, &[1.0], &g, 1.0).unwrap();
        assert!((r.bias - 0.25).abs() < 1e-15);
        assert!((r.variance_trace - 0.25).abs() < 1e-15);
        assert!((r.total - (0.25 + 0.25 / 7.0)).abs() < 1e-15);
    }
}
