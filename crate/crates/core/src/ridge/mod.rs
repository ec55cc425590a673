//! Kernel ridge regression, ridgeless least squares, excess risk and
//! regression weights.

mod quadrature;
mod weights;

pub use quadrature::{grid_nodes, QuadratureNodes, QuadratureSpec, RiskValue};
pub use weights::{averaged_weight_profile, empirical_weights, last_weight_block, population_weights, WeightProfile};

use crate::error::{Error, Result};
use crate::kernels::{DomainSpec, Family, KernelEvaluator, KernelSpec, Points, TorusKernel};
use crate::linalg::{min_norm_lstsq, Cholesky, Matrix, MulAddCounter};
use crate::target::TargetFunction;
use rayon::prelude::*;

/// Training sample 𝒟ₙ.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub x: Points,
    pub y: Vec<f64>,
    /// Provenance tag of the generator stream.
    pub seed: u64,
}

impl Dataset {
    pub fn new(x: Points, y: Vec<f64>, seed: u64) -> Result<Self> {
        if x.n() != y.len() {
            return Err(Error::DimensionMismatch { expected: x.n(), found: y.len() });
        }
        if y.is_empty() {
            return Err(Error::InvalidArgument("dataset must have at least one sample".into()));
        }
        Ok(Self { x, y, seed })
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }
}

/// Fitted predictor f(x) = Σᵢ dualᵢ k(Xᵢ, x) at unit kernel scale.
#[derive(Debug, Clone)]
pub struct RidgeFit {
    kernel: KernelSpec,
    evaluator: KernelEvaluator,
    train_x: Points,
    dual: Vec<f64>,
    lambda_eff: f64,
}

impl RidgeFit {
    /// Build a fit from given dual coefficients.
    pub fn from_dual(kernel: KernelSpec, domain: &DomainSpec, train_x: Points, dual: Vec<f64>, lambda_eff: f64) -> Result<Self> {
        if dual.len() != train_x.n() {
            return Err(Error::DimensionMismatch { expected: train_x.n(), found: dual.len() });
        }
        let evaluator = kernel.evaluator(domain)?;
        Ok(Self { kernel, evaluator, train_x, dual, lambda_eff })
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn domain(&self) -> &DomainSpec {
        self.evaluator.domain()
    }

    pub fn train_x(&self) -> &Points {
        &self.train_x
    }

    pub fn dual(&self) -> &[f64] {
        &self.dual
    }

    pub fn lambda_eff(&self) -> f64 {
        self.lambda_eff
    }

    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        let col = self.evaluator.column(&self.train_x, x)?;
        Ok(col.iter().zip(&self.dual).map(|(k, a)| k * a).sum())
    }

    pub fn predict_many(&self, points: &Points) -> Result<Vec<f64>> {
        self.evaluator.check_points(points)?;
        Ok((0..points.n())
            .into_par_iter()
            .map(|j| {
                let z = points.point(j);
                self.train_x.iter().zip(&self.dual).map(|(x, a)| a * self.evaluator.eval_unchecked(x, z)).sum()
            })
            .collect())
    }

    /// ‖(K̂ + nλ)dual - Y‖ / ‖Y‖.
    pub fn relative_residual(&self, y: &[f64]) -> Result<f64> {
        let mut a = self.evaluator.gram(&self.train_x)?;
        a.add_diagonal(self.lambda_eff);
        let r = a.matvec(&self.dual)?;
        let num: f64 = r.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        let den: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        Ok(if den > 0.0 { num / den } else { num })
    }
}

/// Ridge fit with the system (K̂ + nλ I) dual = Y, K̂ at unit scale.
pub fn fit(kernel: &KernelSpec, domain: &DomainSpec, data: &Dataset) -> Result<RidgeFit> {
    fit_with_shift(kernel, domain, data, data.n() as f64 * kernel.lambda())
}

/// Ridge fit with an explicit diagonal shift (K̂ + shift·I) dual = Y.
pub fn fit_with_shift(kernel: &KernelSpec, domain: &DomainSpec, data: &Dataset, shift: f64) -> Result<RidgeFit> {
    fit_with_shift_counted(kernel, domain, data, shift, &mut MulAddCounter::default())
}

pub fn fit_with_shift_counted(
    kernel: &KernelSpec,
    domain: &DomainSpec,
    data: &Dataset,
    shift: f64,
    counter: &mut MulAddCounter,
) -> Result<RidgeFit> {
    if !(shift >= 0.0) {
        return Err(Error::NonPositiveInput(format!("shift = {shift}")));
    }
    let evaluator = kernel.evaluator(domain)?;
    let mut a = evaluator.gram(&data.x)?;
    a.add_diagonal(shift);
    let chol = match Cholesky::factor_counted(&a, counter) {
        Ok(c) => c,
        Err(Error::NotPositiveDefinite { .. }) => {
            let jitter = 1e-10 * a.trace().abs().max(f64::MIN_POSITIVE) / a.n() as f64;
            a.add_diagonal(jitter);
            Cholesky::factor_counted(&a, counter).map_err(|e| match e {
                Error::NotPositiveDefinite { pivot } => Error::SingularSystem { pivot },
                other => other,
            })?
        }
        Err(e) => return Err(e),
    };
    let dual = chol.solve_counted(&data.y, counter)?;
    Ok(RidgeFit { kernel: *kernel, evaluator, train_x: data.x.clone(), dual, lambda_eff: shift })
}

pub fn predict(fit: &RidgeFit, x: &[f64]) -> Result<f64> {
    fit.predict(x)
}

/// Minimum-norm least-squares coefficients for a feature design.
pub fn fit_ridgeless(features: &Matrix, y: &[f64]) -> Result<Vec<f64>> {
    if features.rows() == 0 || features.cols() == 0 {
        return Err(Error::InvalidArgument("design must be nonempty".into()));
    }
    min_norm_lstsq(features, y)
}

/// ∫ |f - f*|² dρ by the given quadrature.
pub fn excess_risk(fit: &RidgeFit, target: &TargetFunction, domain: &DomainSpec, quadrature: &QuadratureSpec) -> Result<f64> {
    Ok(excess_risk_detailed(fit, target, domain, &quadrature.nodes(domain)?)?.value)
}

/// Excess risk on precomputed nodes, with a standard error for
/// Monte-Carlo nodes (zero for grids).
pub fn excess_risk_detailed(fit: &RidgeFit, target: &TargetFunction, domain: &DomainSpec, nodes: &QuadratureNodes) -> Result<RiskValue> {
    if fit.domain() != domain {
        return Err(Error::QuadratureMismatch("fit and quadrature live on different domains".into()));
    }
    let preds = predictions_on_nodes(fit, nodes)?;
    let errs: Vec<f64> = nodes.points.iter().zip(&preds).map(|(x, p)| {
        let e = p - target.eval(x);
        e * e
    }).collect();
    Ok(RiskValue::from_squared_errors(&errs, nodes.monte_carlo))
}

/// Predictions at quadrature nodes, using a separable fast path for the
/// Gaussian kernel on grids.
pub fn predictions_on_nodes(fit: &RidgeFit, nodes: &QuadratureNodes) -> Result<Vec<f64>> {
    if let (Some(axis), Family::Gaussian) = (&nodes.grid_axis, fit.kernel.family()) {
        let torus = match fit.domain() {
            DomainSpec::Torus { kernel_sum, .. } => Some(*kernel_sum),
            DomainSpec::Cube { .. } => None,
            DomainSpec::Euclidean { .. } => return fit.predict_many(&nodes.points),
        };
        return Ok(separable_gaussian(fit, axis, torus));
    }
    fit.predict_many(&nodes.points)
}

fn separable_gaussian(fit: &RidgeFit, axis: &[f64], torus: Option<TorusKernel>) -> Vec<f64> {
    let d = fit.train_x.dim();
    let n = fit.train_x.n();
    let g = axis.len();
    let inv_s2 = 1.0 / (fit.kernel.sigma() * fit.kernel.sigma());
    let reach = (fit.kernel.sigma() * 6.5).ceil() as i64 + 1;
    let phi = |t: f64| -> f64 {
        match torus {
            None => (-t * t * inv_s2).exp(),
            Some(TorusKernel::WrapAround) => {
                let u = t - t.round();
                (-u * u * inv_s2).exp()
            }
            Some(TorusKernel::Periodized) => {
                let u = t - t.round();
                (-reach..=reach).map(|z| {
                    let v = u + z as f64;
                    (-v * v * inv_s2).exp()
                }).sum()
            }
        }
    };
    // factor[a][j * n + i] = φ(axis_j - X_{i,a})
    let factors: Vec<Vec<f64>> = (0..d)
        .map(|a| {
            let mut f = vec![0.0; g * n];
            f.par_chunks_mut(n).enumerate().for_each(|(j, row)| {
                for (i, v) in row.iter_mut().enumerate() {
                    *v = phi(axis[j] - fit.train_x.point(i)[a]);
                }
            });
            f
        })
        .collect();
    match d {
        1 => (0..g).map(|j| crate::linalg::dot(&factors[0][j * n..(j + 1) * n], &fit.dual)).collect(),
        _ => {
            let mut out = vec![0.0; g * g];
            out.par_chunks_mut(g).enumerate().for_each(|(j1, row)| {
                let w: Vec<f64> = factors[0][j1 * n..(j1 + 1) * n].iter().zip(&fit.dual).map(|(a, b)| a * b).collect();
                for (j2, v) in row.iter_mut().enumerate() {
                    *v = crate::linalg::dot(&factors[1][j2 * n..(j2 + 1) * n], &w);
                }
            });
            out
        }
    }
}
