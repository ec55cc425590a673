use super::risk::RiskEstimate;
use super::sampling::stream_rng;
use crate::error::{Error, Result};
use crate::linalg::{Cholesky, Matrix, SymMatrix};
use crate::ridge::fit_ridgeless;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

/// Conditional risk ‖θₙ - θ*‖²_Σ of θₙ = (ΦᵀΦ + nI)⁻¹ΦᵀY with the design Φ
/// held fixed and the noise of Y = Φθ* + εξ redrawn `draws` times.
pub fn conditional_feature_risk(
    features: &Matrix,
    theta: &[f64],
    embedding_gram: &SymMatrix,
    eps: f64,
    draws: usize,
    seed: u64,
) -> Result<RiskEstimate> {
    let (n, p) = (features.rows(), features.cols());
    if theta.len() != p || embedding_gram.n() != p {
        return Err(Error::DimensionMismatch { expected: p, found: theta.len() });
    }
    if draws == 0 || n == 0 {
        return Err(Error::InvalidArgument("needs at least one draw and one row".into()));
    }
    let mut a = features.gram();
    a.add_diagonal(n as f64);
    let chol = Cholesky::factor(&a)?;
    let clean = features.matvec(theta)?;
    let values: Vec<f64> = (0..draws)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream_rng(seed, &[0x6c69_6e65, r as u64]);
            let y: Vec<f64> = clean.iter().map(|c| c + eps * rng.sample::<f64, _>(StandardNormal)).collect();
            let rhs = features.t_matvec(&y).expect("shape");
            let est = chol.solve(&rhs).expect("shape");
            let diff: Vec<f64> = est.iter().zip(theta).map(|(a, b)| a - b).collect();
            let sd = embedding_gram.matvec(&diff).expect("shape");
            diff.iter().zip(&sd).map(|(a, b)| a * b).sum::<f64>()
        })
        .collect();
    Ok(RiskEstimate::from_values(values, 0, false))
}

/// Least squares on a standard Gaussian design in dimension d with
/// θ* = 0 and noise ε; returns the mean of ‖θ̂ - θ*‖² (= excess risk
/// since Σ = I) over `trials` designs.
pub fn ols_risk(d: usize, n: usize, eps: f64, trials: usize, seed: u64) -> Result<RiskEstimate> {
    if d == 0 || n < d || trials == 0 {
        return Err(Error::InvalidArgument(format!("needs n >= d >= 1 and trials >= 1 (n = {n}, d = {d})")));
    }
    let results: Vec<Result<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream_rng(seed, &[0x006f_6c73, d as u64, n as u64, t as u64]);
            let x = Matrix::from_fn(n, d, |_, _| rng.sample(StandardNormal));
            let y: Vec<f64> = (0..n).map(|_| eps * rng.sample::<f64, _>(StandardNormal)).collect();
            let theta = fit_ridgeless(&x, &y)?;
            Ok(theta.iter().map(|v| v * v).sum())
        })
        .collect();
    let values = results.into_iter().collect::<Result<Vec<f64>>>()?;
    Ok(RiskEstimate::from_values(values, 0, false))
}
