use crate::error::{Error, Result};
use crate::experiments::{sample_inputs, stream_rng};
use crate::kernels::{DomainSpec, KernelSpec, Points};
use crate::linalg::Cholesky;
use crate::numeric::mean_and_se;
use crate::spectral::SpectralModel;
use rayon::prelude::*;

/// α̂(x) = (K̂ + nλ)⁻¹ K̂ₓ, so that f(x) = Σ Yᵢ α̂ᵢ(x) for any labels.
pub fn empirical_weights(kernel: &KernelSpec, domain: &DomainSpec, train_x: &Points, x: &[f64]) -> Result<Vec<f64>> {
    let ev = kernel.evaluator(domain)?;
    let n = train_x.n();
    let mut a = ev.gram(train_x)?;
    a.add_diagonal(n as f64 * kernel.lambda());
    let chol = Cholesky::factor(&a).map_err(|e| match e {
        Error::NotPositiveDefinite { pivot } => Error::SingularSystem { pivot },
        other => other,
    })?;
    chol.solve(&ev.column(train_x, x)?)
}

/// Weight of the last training point, from the bordered-system formula
/// (k(X,X) - Z_Xᵀ Z_X + nλ)⁻¹ (k(X,x) - Z_Xᵀ Z_x) with Z = L⁻¹ K̃ and L the
/// Cholesky factor of the first n-1 points' system.
pub fn last_weight_block(kernel: &KernelSpec, domain: &DomainSpec, train_x: &Points, x: &[f64]) -> Result<f64> {
    let n = train_x.n();
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one training point".into()));
    }
    let ev = kernel.evaluator(domain)?;
    let shift = n as f64 * kernel.lambda();
    let base = train_x.prefix(n - 1);
    let last = train_x.point(n - 1);
    let (mut z_last, mut z_x) = (ev.column(&base, last)?, ev.column(&base, x)?);
    if n > 1 {
        let mut a = ev.gram(&base)?;
        a.add_diagonal(shift);
        let chol = Cholesky::factor(&a)?;
        chol.forward_in_place(&mut z_last);
        chol.forward_in_place(&mut z_x);
    }
    let schur = ev.eval(last, last)? + shift - crate::linalg::dot(&z_last, &z_last);
    Ok((ev.eval(last, x)? - crate::linalg::dot(&z_last, &z_x)) / schur)
}

/// Averaged weight profiles x ↦ n E[α̂_{X₁}(x₀) | X₁ = x] for several x₀.
#[derive(Debug, Clone)]
pub struct WeightProfile {
    pub anchors: Points,
    pub probes: Points,
    /// mean[a][p] for anchor a and probe p.
    pub mean: Vec<Vec<f64>>,
    pub std_error: Vec<Vec<f64>>,
    pub runs: usize,
}

/// Monte-Carlo averaged weights: each run draws the other n-1 points from
/// the domain's law, places X₁ at the probe and records n·α̂₁(x₀).
pub fn averaged_weight_profile(
    kernel: &KernelSpec,
    domain: &DomainSpec,
    n: usize,
    anchors: &Points,
    probes: &Points,
    runs: usize,
    base_seed: u64,
) -> Result<WeightProfile> {
    if n == 0 || runs == 0 {
        return Err(Error::InvalidArgument("n and runs must be positive".into()));
    }
    let ev = kernel.evaluator(domain)?;
    let shift = n as f64 * kernel.lambda();
    let per_run: Vec<Result<Vec<f64>>> = (0..runs)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream_rng(base_seed, &[0x7765_6967, n as u64, r as u64]);
            let base = sample_inputs(domain, n - 1, &mut rng);
            let chol = if n > 1 {
                let mut a = ev.gram(&base)?;
                a.add_diagonal(shift);
                Some(Cholesky::factor(&a)?)
            } else {
                None
            };
            let solve = |v: &mut Vec<f64>| {
                if let Some(c) = &chol {
                    c.forward_in_place(v);
                }
            };
            let mut z_anchor = Vec::with_capacity(anchors.n());
            for x0 in anchors.iter() {
                let mut z = ev.column(&base, x0)?;
                solve(&mut z);
                z_anchor.push(z);
            }
            let mut out = vec![0.0; anchors.n() * probes.n()];
            for (p, x) in probes.iter().enumerate() {
                let mut zx = ev.column(&base, x)?;
                solve(&mut zx);
                let schur = ev.eval(x, x)? + shift - crate::linalg::dot(&zx, &zx);
                for (a, x0) in anchors.iter().enumerate() {
                    let num = ev.eval(x, x0)? - crate::linalg::dot(&zx, &z_anchor[a]);
                    out[a * probes.n() + p] = n as f64 * num / schur;
                }
            }
            Ok(out)
        })
        .collect();
    let per_run: Vec<Vec<f64>> = per_run.into_iter().collect::<Result<_>>()?;
    let mut mean = vec![vec![0.0; probes.n()]; anchors.n()];
    let mut se = mean.clone();
    for a in 0..anchors.n() {
        for p in 0..probes.n() {
            let vals: Vec<f64> = per_run.iter().map(|v| v[a * probes.n() + p]).collect();
            let (m, s) = mean_and_se(&vals);
            mean[a][p] = m;
            se[a][p] = s;
        }
    }
    Ok(WeightProfile { anchors: anchors.clone(), probes: probes.clone(), mean, std_error: se, runs })
}

/// Population weight α_x(x₀) on the torus.
pub fn population_weights(model: &SpectralModel, x: &[f64], x0: &[f64]) -> Result<f64> {
    model.population_weight(x, x0)
}
