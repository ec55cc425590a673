//! Effective dimensions and bias functionals: exact Fourier sums on the
//! torus, plug-in Gram spectra, and closed-form bounds.

mod closed_form;
mod empirical;
mod fourier_target;
pub mod lattice;
mod polylog;

pub use closed_form::{bias_closed_form, capacity_closed_form};
pub use empirical::{empirical_bias, empirical_effective_dimension, n_plus_empirical, n_plus_empirical_at};
pub use fourier_target::{FourierSpec, FourierTarget, FourierTerm};
pub use lattice::LatticeSum;
pub use polylog::polylog_l;

use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::numeric::Neumaier;
use lattice::{for_each_in_shell, isotropic_sum, isotropic_sum_fixed, LATTICE_CAP};
use std::f64::consts::PI;

/// Relative stopping threshold of the adaptive shell sums.
pub const SHELL_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// Add shells until (M+1)·shell ≤ 1e-8·sum.
    Adaptive,
    /// Sum exactly over ‖m‖∞ ≤ M.
    Fixed(usize),
}

/// Translation-invariant kernel on the uniform torus 𝕋ᵈ, diagonalised
/// by Fourier modes with eigenvalues e_m = σᵈ F(σm) / λ of λ⁻¹K.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralModel {
    kernel: KernelSpec,
    d: usize,
    truncation: Truncation,
}

impl SpectralModel {
    pub fn new(kernel: KernelSpec, d: usize) -> Result<Self> {
        if !kernel.family().is_translation_invariant() {
            return Err(Error::UnsupportedFamily(format!("{} is not translation invariant", kernel.family().name())));
        }
        if d == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        Ok(Self { kernel, d, truncation: Truncation::Adaptive })
    }

    pub fn with_truncation(mut self, truncation: Truncation) -> Self {
        self.truncation = truncation;
        self
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// e_m for a frequency vector.
    pub fn eigenvalue(&self, m: &[i64]) -> f64 {
        let m2: f64 = m.iter().map(|&x| (x * x) as f64).sum();
        self.eigenvalue_radial(m2)
    }

    /// e_m as a function of ‖m‖².
    pub fn eigenvalue_radial(&self, m2: f64) -> f64 {
        let omega = [self.kernel.sigma() * m2.sqrt()];
        let mut w = vec![0.0; self.d];
        w[0] = omega[0];
        self.kernel.sigma().powi(self.d as i32) * self.kernel.fourier_transform(&w).expect("translation invariant")
            / self.kernel.lambda()
    }

    fn radial_sum<F: Fn(f64) -> f64>(&self, term: F) -> Result<LatticeSum> {
        match self.truncation {
            Truncation::Adaptive => isotropic_sum(self.d, SHELL_TOLERANCE, term),
            Truncation::Fixed(m) => Ok(isotropic_sum_fixed(self.d, m, term)),
        }
    }

    /// 𝒩ₐ = Σ_m (e_m / (e_m + 1))ᵃ with its truncation record.
    pub fn effective_dimension_detailed(&self, a: f64) -> Result<LatticeSum> {
        if !(a > 0.0) {
            return Err(Error::NonPositiveInput(format!("a = {a}")));
        }
        self.radial_sum(|m2| {
            let e = self.eigenvalue_radial(m2);
            (e / (e + 1.0)).powf(a)
        })
    }

    pub fn effective_dimension(&self, a: f64) -> Result<f64> {
        Ok(self.effective_dimension_detailed(a)?.value)
    }

    /// 𝒩₊, which equals 𝒩₁ for a translation-invariant kernel on the
    /// uniform torus because |e^{2πimᵀx}| = 1.
    pub fn n_plus(&self) -> Result<f64> {
        self.effective_dimension(1.0)
    }

    /// 𝒮 = Σ_m |f̂_m|² / (e_m + 1)².
    pub fn bias_term_detailed(&self, target: &FourierTarget) -> Result<LatticeSum> {
        if target.dim() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: target.dim() });
        }
        if let Some(powers) = target.sparse_powers() {
            let mut acc = Neumaier::new();
            let mut cutoff = 0usize;
            for (m, p) in powers {
                let e = self.eigenvalue(&m);
                acc.add(p / ((e + 1.0) * (e + 1.0)));
                cutoff = cutoff.max(m.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0));
            }
            return Ok(LatticeSum { value: acc.value(), cutoff, tail_ratio: 0.0 });
        }
        let FourierSpec::Profile { amplitude, decay, .. } = *target.spec() else { unreachable!() };
        self.radial_sum(|m2| {
            let e = self.eigenvalue_radial(m2);
            FourierTarget::profile_power(amplitude, decay, m2) / ((e + 1.0) * (e + 1.0))
        })
    }

    pub fn bias_term(&self, target: &FourierTarget) -> Result<f64> {
        Ok(self.bias_term_detailed(target)?.value)
    }

    /// Population regression weight α_x(x₀) = Σ_m e_m/(e_m+1) cos(2π mᵀ(x₀ - x)).
    pub fn population_weight(&self, x: &[f64], x0: &[f64]) -> Result<f64> {
        if x.len() != self.d || x0.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: x.len().min(x0.len()) });
        }
        let delta: Vec<f64> = x0.iter().zip(x).map(|(a, b)| a - b).collect();
        let mut value = Neumaier::new();
        let mut mass = Neumaier::new();
        let mut k = 0usize;
        loop {
            let mut shell_mass = 0.0;
            for_each_in_shell(self.d, k, |m| {
                let e = self.eigenvalue(m);
                let r = e / (e + 1.0);
                let phase = 2.0 * PI * m.iter().zip(&delta).map(|(&mi, di)| mi as f64 * di).sum::<f64>();
                value.add(r * phase.cos());
                shell_mass += r;
            });
            mass.add(shell_mass);
            let total = mass.value();
            let ratio = if total > 0.0 { (k as f64 + 1.0) * shell_mass / total } else { 0.0 };
            match self.truncation {
                Truncation::Fixed(cutoff) if k >= cutoff => break,
                Truncation::Adaptive if k > 0 && ratio <= SHELL_TOLERANCE => break,
                _ => {}
            }
            if ((2 * (k + 1) + 1) as f64).powi(self.d as i32) > LATTICE_CAP {
                return Err(Error::TruncationTooSmall { cutoff: k, tail_ratio: ratio });
            }
            k += 1;
        }
        Ok(value.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matern_brute_force() {
        let k = KernelSpec::matern(2.0, 1.0, 1e-4).unwrap();
        let model = SpectralModel::new(k, 1).unwrap();
        let fast = model.effective_dimension(1.0).unwrap();
        let mut acc = Neumaier::new();
        for m in (1..=1_000_000i64).rev() {
            let e = model.eigenvalue(&[m]);
            acc.add(2.0 * e / (e + 1.0));
        }
        let e0 = model.eigenvalue(&[0]);
        acc.add(e0 / (e0 + 1.0));
        let brute = acc.value();
        assert!((fast - brute).abs() < 1e-6 * brute, "{fast} vs {brute}");
    }

    #[test]
    fn single_cosine_bias() {
        let k = KernelSpec::gaussian(0.2, 1e-3).unwrap();
        let model = SpectralModel::new(k, 1).unwrap();
        let t = FourierTarget::single_cosine(&[3]).unwrap();
        let lm = model.eigenvalue(&[3]) * k.lambda();
        let expect = k.lambda().powi(2) / (2.0 * (k.lambda() + lm).powi(2));
        assert!((model.bias_term(&t).unwrap() - expect).abs() < 1e-14);
    }

    #[test]
    fn fixed_cutoff_saturates() {
        let k = KernelSpec::gaussian(0.5, 1e-300).unwrap();
        let model = SpectralModel::new(k, 2).unwrap().with_truncation(Truncation::Fixed(3));
        assert!((model.effective_dimension(1.0).unwrap() - 49.0).abs() < 1e-9);
    }
}
