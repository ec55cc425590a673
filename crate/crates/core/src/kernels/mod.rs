//! Kernel families, domains, Gram matrices and Fourier profiles.

mod domain;
mod features;

pub use domain::{Density, DomainSpec, Points, TorusKernel};
pub use features::{
    monomial_count, monomial_exponents, monomial_moment, polynomial_design, polynomial_embedding_gram, polynomial_features, FEATURE_CAP,
};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymMatrix};
use crate::numeric::ln_gamma_fn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Kernel shape. Translation-invariant families use `q(‖x - y‖ / σ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Family {
    /// q(r) = exp(-r²)
    Gaussian,
    /// q(r) = exp(-r)
    Exponential,
    /// Normalised Matérn with smoothness ν = β - d/2, so that its
    /// Fourier profile is (1 + ‖ω‖²)^(-β). Pointwise evaluation needs ν
    /// to be a positive half-integer.
    Matern { beta: f64 },
    /// Defined only through its Fourier profile (1 + ‖ω‖²)^(-β).
    SobolevProfile { beta: f64 },
    /// ((1 + xᵀy) / normalizer)^degree
    Polynomial { degree: u32, normalizer: f64 },
}

impl Family {
    pub fn is_translation_invariant(&self) -> bool {
        !matches!(self, Family::Polynomial { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Gaussian => "gaussian",
            Family::Exponential => "exponential",
            Family::Matern { .. } => "matern",
            Family::SobolevProfile { .. } => "sobolev_profile",
            Family::Polynomial { .. } => "polynomial",
        }
    }
}

/// A kernel family with bandwidth σ and regularisation λ. The regularised
/// kernel is λ⁻¹ k.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawKernelSpec", into = "RawKernelSpec")]
pub struct KernelSpec {
    family: Family,
    sigma: f64,
    lambda: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKernelSpec {
    family: Family,
    #[serde(default = "one")]
    sigma: f64,
    #[serde(default = "one")]
    lambda: f64,
}

fn one() -> f64 {
    1.0
}

impl TryFrom<RawKernelSpec> for KernelSpec {
    type Error = Error;
    fn try_from(r: RawKernelSpec) -> Result<Self> {
        KernelSpec::new(r.family, r.sigma, r.lambda)
    }
}

impl From<KernelSpec> for RawKernelSpec {
    fn from(k: KernelSpec) -> Self {
        RawKernelSpec { family: k.family, sigma: k.sigma, lambda: k.lambda }
    }
}

impl KernelSpec {
    pub fn new(family: Family, sigma: f64, lambda: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::NonPositiveInput(format!("sigma = {sigma}")));
        }
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::NonPositiveInput(format!("lambda = {lambda}")));
        }
        match family {
            Family::Matern { beta } | Family::SobolevProfile { beta } if !(beta > 0.0) => {
                return Err(Error::NonPositiveInput(format!("beta = {beta}")));
            }
            Family::Polynomial { normalizer, .. } if !(normalizer > 0.0) => {
                return Err(Error::NonPositiveInput(format!("normalizer = {normalizer}")));
            }
            _ => {}
        }
        Ok(Self { family, sigma, lambda })
    }

    pub fn gaussian(sigma: f64, lambda: f64) -> Result<Self> {
        Self::new(Family::Gaussian, sigma, lambda)
    }

    pub fn exponential(sigma: f64, lambda: f64) -> Result<Self> {
        Self::new(Family::Exponential, sigma, lambda)
    }

    pub fn matern(beta: f64, sigma: f64, lambda: f64) -> Result<Self> {
        Self::new(Family::Matern { beta }, sigma, lambda)
    }

    pub fn sobolev_profile(beta: f64, sigma: f64, lambda: f64) -> Result<Self> {
        Self::new(Family::SobolevProfile { beta }, sigma, lambda)
    }

    pub fn polynomial(degree: u32, normalizer: f64, lambda: f64) -> Result<Self> {
        Self::new(Family::Polynomial { degree, normalizer }, 1.0, lambda)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn with_sigma(&self, sigma: f64) -> Result<Self> {
        Self::new(self.family, sigma, self.lambda)
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::new(self.family, self.sigma, lambda)
    }

    /// Regularised kernel value λ⁻¹ k(x, y).
    pub fn eval(&self, domain: &DomainSpec, x: &[f64], y: &[f64]) -> Result<f64> {
        Ok(self.evaluator(domain)?.eval(x, y)? / self.lambda)
    }

    /// Regularised Gram matrix λ⁻¹ k(Xᵢ, Xⱼ).
    pub fn gram(&self, domain: &DomainSpec, points: &Points) -> Result<SymMatrix> {
        Ok(self.evaluator(domain)?.gram(points)?.scaled(1.0 / self.lambda))
    }

    pub fn evaluator(&self, domain: &DomainSpec) -> Result<KernelEvaluator> {
        KernelEvaluator::new(*self, domain.clone())
    }

    /// Unit-bandwidth Fourier profile q̂ used by the closed-form bounds:
    /// Gaussian π^(-d/2) exp(-π²‖ω‖²), exponential (1 + ‖ω‖²)^(-(d+1)/2),
    /// Matérn and Sobolev (1 + ‖ω‖²)^(-β).
    pub fn spectral_density(&self, omega: &[f64]) -> Result<f64> {
        let d = omega.len() as f64;
        let w2: f64 = omega.iter().map(|w| w * w).sum();
        match self.family {
            Family::Gaussian => Ok(PI.powf(-d / 2.0) * (-PI * PI * w2).exp()),
            Family::Exponential => Ok((1.0 + w2).powf(-(d + 1.0) / 2.0)),
            Family::Matern { beta } | Family::SobolevProfile { beta } => Ok((1.0 + w2).powf(-beta)),
            Family::Polynomial { .. } => Err(Error::UnsupportedFamily("polynomial has no spectral density".into())),
        }
    }

    /// Exact Fourier transform ∫ q(x) e^(-2πi ωᵀx) dx of the pointwise
    /// profile at unit bandwidth. For the Sobolev profile this is the
    /// profile itself.
    pub fn fourier_transform(&self, omega: &[f64]) -> Result<f64> {
        let d = omega.len();
        let w2: f64 = omega.iter().map(|w| w * w).sum();
        match self.family {
            Family::Gaussian => Ok(PI.powf(d as f64 / 2.0) * (-PI * PI * w2).exp()),
            Family::Exponential => {
                let beta = (d as f64 + 1.0) / 2.0;
                Ok(matern_amplitude(d, beta) * (1.0 + 4.0 * PI * PI * w2).powf(-beta))
            }
            Family::Matern { beta } => {
                Ok(matern_amplitude(d, beta) * (1.0 + 4.0 * PI * PI * w2).powf(-beta))
            }
            Family::SobolevProfile { beta } => Ok((1.0 + w2).powf(-beta)),
            Family::Polynomial { .. } => Err(Error::UnsupportedFamily("polynomial has no Fourier transform".into())),
        }
    }

    /// Eigenvalue of λ⁻¹ K on the unit torus at integer frequency m:
    /// σᵈ F(σm) / λ with F the exact Fourier transform.
    pub fn torus_eigenvalue(&self, m: &[f64]) -> Result<f64> {
        let d = m.len() as i32;
        let scaled: Vec<f64> = m.iter().map(|x| x * self.sigma).collect();
        Ok(self.sigma.powi(d) * self.fourier_transform(&scaled)? / self.lambda)
    }
}

/// 2ᵈ π^(d/2) Γ(β) / Γ(β - d/2): angular Fourier amplitude of the
/// normalised Matérn.
fn matern_amplitude(d: usize, beta: f64) -> f64 {
    let nu = beta - d as f64 / 2.0;
    if nu <= 0.0 {
        return f64::NAN;
    }
    (d as f64 * 2f64.ln() + d as f64 / 2.0 * PI.ln() + ln_gamma_fn(beta) - ln_gamma_fn(nu)).exp()
}

#[derive(Debug, Clone)]
enum Profile {
    Gaussian,
    Exponential,
    /// e^{-r} Σ_k c_k r^k
    HalfInteger(Vec<f64>),
    Polynomial { degree: u32, normalizer: f64 },
}

impl Profile {
    fn q(&self, r: f64) -> f64 {
        match self {
            Profile::Gaussian => (-r * r).exp(),
            Profile::Exponential => (-r).exp(),
            Profile::HalfInteger(c) => {
                let poly = c.iter().rev().fold(0.0, |acc, &ck| acc * r + ck);
                (-r).exp() * poly
            }
            Profile::Polynomial { .. } => unreachable!(),
        }
    }
}

/// Kernel bound to a domain, at unit regularisation (λ = 1).
#[derive(Debug, Clone)]
pub struct KernelEvaluator {
    spec: KernelSpec,
    domain: DomainSpec,
    profile: Profile,
    images: Vec<Vec<f64>>,
}

impl KernelEvaluator {
    fn new(spec: KernelSpec, domain: DomainSpec) -> Result<Self> {
        let d = domain.dim();
        let profile = match spec.family {
            Family::Gaussian => Profile::Gaussian,
            Family::Exponential => Profile::Exponential,
            Family::Matern { beta } => {
                let nu = beta - d as f64 / 2.0;
                let p = nu - 0.5;
                if !(nu > 0.0) || (p - p.round()).abs() > 1e-12 {
                    return Err(Error::UnsupportedFamily(format!(
                        "pointwise Matérn needs beta - d/2 to be a positive half-integer (got {nu})"
                    )));
                }
                Profile::HalfInteger(half_integer_matern_coefficients(p.round() as usize))
            }
            Family::SobolevProfile { .. } => {
                return Err(Error::UnsupportedFamily("the Sobolev profile kernel has no pointwise form".into()))
            }
            Family::Polynomial { degree, normalizer } => Profile::Polynomial { degree, normalizer },
        };
        let images = match domain {
            DomainSpec::Torus { kernel_sum: TorusKernel::Periodized, .. } if spec.family.is_translation_invariant() => {
                let radius = spec.sigma * cutoff_radius(&profile);
                let reach = radius.ceil() as i64 + 1;
                let count = (2 * reach + 1) as f64;
                if count.powi(d as i32) > 1e6 {
                    return Err(Error::InvalidArgument(format!("periodised sum needs {count}^{d} images")));
                }
                lattice_box(d, reach)
            }
            _ => vec![vec![0.0; d]],
        };
        Ok(Self { spec, domain, profile, images })
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    /// Unit-regularisation kernel value k(x, y).
    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.domain.check_point(x)?;
        self.domain.check_point(y)?;
        Ok(self.eval_unchecked(x, y))
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64], y: &[f64]) -> f64 {
        if let Profile::Polynomial { degree, normalizer } = self.profile {
            let ip: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
            return ((1.0 + ip) / normalizer).powi(degree as i32);
        }
        let inv_sigma = 1.0 / self.spec.sigma;
        match self.domain {
            DomainSpec::Torus { kernel_sum, .. } => {
                let delta: Vec<f64> = x.iter().zip(y).map(|(a, b)| {
                    let t = a - b;
                    t - t.round()
                }).collect();
                match kernel_sum {
                    TorusKernel::WrapAround => {
                        let r2: f64 = delta.iter().map(|t| t * t).sum();
                        self.profile.q(r2.sqrt() * inv_sigma)
                    }
                    TorusKernel::Periodized => {
                        let mut acc = crate::numeric::Neumaier::new();
                        for z in &self.images {
                            let r2: f64 = delta.iter().zip(z).map(|(t, zi)| (t + zi) * (t + zi)).sum();
                            acc.add(self.profile.q(r2.sqrt() * inv_sigma));
                        }
                        acc.value()
                    }
                }
            }
            _ => {
                let r2: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
                self.profile.q(r2.sqrt() * inv_sigma)
            }
        }
    }

    /// Unit-regularisation Gram matrix.
    pub fn gram(&self, points: &Points) -> Result<SymMatrix> {
        self.check_points(points)?;
        let n = points.n();
        let rows: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|i| (i..n).map(|j| self.eval_unchecked(points.point(i), points.point(j))).collect())
            .collect();
        let mut m = Matrix::zeros(n, n);
        for (i, row) in rows.into_iter().enumerate() {
            for (off, v) in row.into_iter().enumerate() {
                m[(i, i + off)] = v;
                m[(i + off, i)] = v;
            }
        }
        Ok(SymMatrix::from_matrix_unchecked(m))
    }

    /// Cross kernel matrix k(Xᵢ, Zⱼ), one row per X point.
    pub fn cross(&self, x: &Points, z: &Points) -> Result<Matrix> {
        self.check_points(x)?;
        self.check_points(z)?;
        let data: Vec<f64> = (0..x.n())
            .into_par_iter()
            .flat_map_iter(|i| (0..z.n()).map(move |j| (i, j)))
            .map(|(i, j)| self.eval_unchecked(x.point(i), z.point(j)))
            .collect();
        Matrix::new(x.n(), z.n(), data)
    }

    /// Kernel column k(Xᵢ, y) for all i.
    pub fn column(&self, x: &Points, y: &[f64]) -> Result<Vec<f64>> {
        self.domain.check_point(y)?;
        Ok((0..x.n()).map(|i| self.eval_unchecked(x.point(i), y)).collect())
    }

    pub(crate) fn check_points(&self, points: &Points) -> Result<()> {
        if points.dim() != self.domain.dim() {
            return Err(Error::DimensionMismatch { expected: self.domain.dim(), found: points.dim() });
        }
        for p in points.iter() {
            self.domain.check_point(p)?;
        }
        Ok(())
    }
}

/// Coefficients c_k of e^{-r} Σ c_k r^k for the normalised Matérn with
/// ν = p + 1/2.
fn half_integer_matern_coefficients(p: usize) -> Vec<f64> {
    // p!/(2p)! Σ_i (p+i)!/(i!(p-i)!) (2r)^(p-i)
    let lf = |k: usize| ln_gamma_fn(k as f64 + 1.0);
    let mut c = vec![0.0; p + 1];
    for i in 0..=p {
        let k = p - i;
        let ln = lf(p) - lf(2 * p) + lf(p + i) - lf(i) - lf(p - i) + k as f64 * 2f64.ln();
        c[k] = ln.exp();
    }
    c
}

/// Radius beyond which q(r) < 1e-18.
fn cutoff_radius(profile: &Profile) -> f64 {
    let mut r: f64 = 1.0;
    while profile.q(r) >= 1e-18 && r < 1e4 {
        r *= 1.1;
    }
    r
}

fn lattice_box(d: usize, reach: i64) -> Vec<Vec<f64>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        let mut next = Vec::new();
        for v in &out {
            for z in -reach..=reach {
                let mut w = v.clone();
                w.push(z as f64);
                next.push(w);
            }
        }
        out = next;
    }
    out
}
