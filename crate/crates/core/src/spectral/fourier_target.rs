use super::lattice::{for_each_in_shell, shell_size};
use crate::error::{Error, Result};
use crate::numeric::Neumaier;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// One Fourier coefficient f̂_m.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierTerm {
    pub m: Vec<i64>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// A real target on the torus given by its Fourier coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FourierSpec {
    /// Finitely many coefficients, closed under m -> -m with conjugation.
    Sparse { d: usize, terms: Vec<FourierTerm> },
    /// Zero-phase coefficients with |f̂_m|² = amplitude (1 + ‖m‖²)^(-decay).
    Profile { d: usize, amplitude: f64, decay: f64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "FourierSpec", into = "FourierSpec")]
pub struct FourierTarget {
    spec: FourierSpec,
    expansion: OnceLock<Vec<(Vec<f64>, f64, f64)>>,
}

impl PartialEq for FourierTarget {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl From<FourierTarget> for FourierSpec {
    fn from(t: FourierTarget) -> Self {
        t.spec
    }
}

impl TryFrom<FourierSpec> for FourierTarget {
    type Error = Error;
    fn try_from(spec: FourierSpec) -> Result<Self> {
        FourierTarget::new(spec)
    }
}

impl FourierTarget {
    pub fn new(spec: FourierSpec) -> Result<Self> {
        match &spec {
            FourierSpec::Sparse { d, terms } => {
                if *d == 0 {
                    return Err(Error::InvalidArgument("dimension must be at least 1".into()));
                }
                for t in terms {
                    if t.m.len() != *d {
                        return Err(Error::DimensionMismatch { expected: *d, found: t.m.len() });
                    }
                    let neg: Vec<i64> = t.m.iter().map(|x| -x).collect();
                    let partner = terms.iter().find(|u| u.m == neg).ok_or_else(|| {
                        Error::InvalidArgument(format!("coefficient at {:?} has no partner at {:?}", t.m, neg))
                    })?;
                    let scale = 1e-12 * (t.re.abs() + t.im.abs()).max(1e-300);
                    if (partner.re - t.re).abs() > scale || (partner.im + t.im).abs() > scale {
                        return Err(Error::InvalidArgument(format!("coefficients at ±{:?} are not conjugate", t.m)));
                    }
                }
            }
            FourierSpec::Profile { d, amplitude, decay } => {
                if *d == 0 {
                    return Err(Error::InvalidArgument("dimension must be at least 1".into()));
                }
                if !(*amplitude >= 0.0) {
                    return Err(Error::NonPositiveInput(format!("amplitude = {amplitude}")));
                }
                if !(*decay > *d as f64) {
                    return Err(Error::InvalidArgument(format!(
                        "profile decay {decay} must exceed d = {d} for a pointwise-summable series"
                    )));
                }
            }
        }
        Ok(Self { spec, expansion: OnceLock::new() })
    }

    /// cos(2π mᵀx), i.e. coefficients 1/2 at ±m (or 1 at m = 0).
    pub fn single_cosine(m: &[i64]) -> Result<Self> {
        let d = m.len();
        let terms = if m.iter().all(|&x| x == 0) {
            vec![FourierTerm { m: m.to_vec(), re: 1.0, im: 0.0 }]
        } else {
            vec![
                FourierTerm { m: m.to_vec(), re: 0.5, im: 0.0 },
                FourierTerm { m: m.iter().map(|x| -x).collect(), re: 0.5, im: 0.0 },
            ]
        };
        Self::new(FourierSpec::Sparse { d, terms })
    }

    pub fn profile(d: usize, amplitude: f64, decay: f64) -> Result<Self> {
        Self::new(FourierSpec::Profile { d, amplitude, decay })
    }

    pub fn spec(&self) -> &FourierSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        match self.spec {
            FourierSpec::Sparse { d, .. } | FourierSpec::Profile { d, .. } => d,
        }
    }

    /// |f̂_m|² for profile targets.
    pub fn profile_power(amplitude: f64, decay: f64, m2: f64) -> f64 {
        amplitude * (1.0 + m2).powf(-decay)
    }

    /// Σ_m |f̂_m|² (the squared L² norm).
    pub fn l2_norm_sq(&self) -> Result<f64> {
        match &self.spec {
            FourierSpec::Sparse { terms, .. } => {
                Ok(crate::numeric::neumaier_sum(terms.iter().map(|t| t.re * t.re + t.im * t.im)))
            }
            FourierSpec::Profile { d, amplitude, decay } => {
                super::lattice::isotropic_sum(*d, 1e-10, |m2| Self::profile_power(*amplitude, *decay, m2))
                    .map(|s| s.value)
            }
        }
    }

    fn expansion(&self) -> &[(Vec<f64>, f64, f64)] {
        self.expansion.get_or_init(|| match &self.spec {
            FourierSpec::Sparse { terms, .. } => {
                terms.iter().map(|t| (t.m.iter().map(|&x| x as f64).collect(), t.re, t.im)).collect()
            }
            FourierSpec::Profile { d, amplitude, decay } => {
                let mut out = Vec::new();
                let total = Neumaier::new();
                let mut total = total;
                let mut k = 0usize;
                loop {
                    let mut shell = 0.0;
                    for_each_in_shell(*d, k, |m| {
                        let m2: f64 = m.iter().map(|&x| (x * x) as f64).sum();
                        let c = Self::profile_power(*amplitude, *decay, m2).sqrt();
                        shell += c;
                        out.push((m.iter().map(|&x| x as f64).collect(), c, 0.0));
                    });
                    total.add(shell);
                    if (k as f64 + 1.0) * shell <= 1e-10 * total.value() || shell_size(*d, k + 1) > 1e7 as u64 {
                        break;
                    }
                    k += 1;
                }
                out
            }
        })
    }

    /// f(x) = Σ_m Re(f̂_m e^(2πi mᵀx)).
    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = Neumaier::new();
        for (m, re, im) in self.expansion() {
            let theta = 2.0 * PI * m.iter().zip(x).map(|(a, b)| a * b).sum::<f64>();
            acc.add(re * theta.cos() - im * theta.sin());
        }
        acc.value()
    }

    /// Visit (m, |f̂_m|²) over the support, for sparse targets.
    pub(crate) fn sparse_powers(&self) -> Option<Vec<(Vec<i64>, f64)>> {
        match &self.spec {
            FourierSpec::Sparse { terms, .. } => {
                Some(terms.iter().map(|t| (t.m.clone(), t.re * t.re + t.im * t.im)).collect())
            }
            FourierSpec::Profile { .. } => None,
        }
    }
}
