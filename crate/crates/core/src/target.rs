//! Regression targets f*.

use crate::error::{Error, Result};
use crate::spectral::FourierTarget;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TargetFunction {
    Zero,
    /// sign(x₁)
    SignFirstCoord,
    /// x₁^power
    Monomial { power: u32 },
    /// 63x₁⁵ - 70x₁³ + 15x₁
    LegendreQuintic,
    /// cos(2π ωᵀx)
    Cosine { frequency: Vec<f64> },
    /// exp(-max(‖x‖², M)) - exp(-M)
    TruncatedGaussian { m: f64 },
    FourierMixture { series: FourierTarget },
}

impl TargetFunction {
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            TargetFunction::Zero => 0.0,
            TargetFunction::SignFirstCoord => {
                if x[0] > 0.0 {
                    1.0
                } else if x[0] < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            }
            TargetFunction::Monomial { power } => x[0].powi(*power as i32),
            TargetFunction::LegendreQuintic => {
                let t = x[0];
                let t2 = t * t;
                t * (15.0 + t2 * (-70.0 + 63.0 * t2))
            }
            TargetFunction::Cosine { frequency } => {
                (2.0 * PI * frequency.iter().zip(x).map(|(w, v)| w * v).sum::<f64>()).cos()
            }
            TargetFunction::TruncatedGaussian { m } => {
                let r2: f64 = x.iter().map(|v| v * v).sum();
                (-r2.max(*m)).exp() - (-m).exp()
            }
            TargetFunction::FourierMixture { series } => series.eval(x),
        }
    }

    /// Check that the target can be evaluated on points of dimension d.
    pub fn validate(&self, d: usize) -> Result<()> {
        match self {
            TargetFunction::Cosine { frequency } if frequency.len() != d => {
                Err(Error::DimensionMismatch { expected: d, found: frequency.len() })
            }
            TargetFunction::FourierMixture { series } if series.dim() != d => {
                Err(Error::DimensionMismatch { expected: d, found: series.dim() })
            }
            _ => Ok(()),
        }
    }

    /// Fourier representation on the torus, when the target has one.
    pub fn fourier(&self, d: usize) -> Option<FourierTarget> {
        match self {
            TargetFunction::FourierMixture { series } if series.dim() == d => Some(series.clone()),
            TargetFunction::Cosine { frequency } if frequency.len() == d && frequency.iter().all(|w| *w == w.round()) => {
                let m: Vec<i64> = frequency.iter().map(|w| *w as i64).collect();
                FourierTarget::single_cosine(&m).ok()
            }
            TargetFunction::Zero => {
                FourierTarget::new(crate::spectral::FourierSpec::Sparse { d, terms: vec![] }).ok()
            }
            _ => None,
        }
    }
}
