//! Minimax lower bounds, the exact bias-variance decomposition, the
//! upper-lower band around ε²𝒩₂/n + 𝒮, and profile rates.

mod decomposition;
mod profile;

pub use decomposition::{bias_variance_oracle, DecompositionReport};
pub use profile::{profile_rate, ProfileRate};

use crate::error::{Error, Result};
use crate::numeric::{binomial_exact, ln_binomial, ln_gamma_fn};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
    Band,
}

/// Feature count behind a counting bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Count {
    Exact(u128),
    /// The count overflowed 128 bits; its natural logarithm.
    Overflow { ln_count: f64 },
}

/// Echo of the inputs a bound was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct BoundInputs {
    pub n: f64,
    pub d: usize,
    pub alpha_or_beta: Option<f64>,
    pub omega: Option<f64>,
    pub eps: f64,
    pub big_d: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeFlags {
    /// aₙ = 𝒩₊/n ≤ 1
    pub very_high_sample: bool,
    /// 𝒩₂ ≤ n
    pub high_sample: bool,
    /// |n - 𝒩₁| ≤ 1/2, the double-descent marker
    pub at_transition: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: &'static str,
    pub kind: BoundKind,
    pub value: f64,
    pub center: f64,
    pub radius: f64,
    pub inputs: BoundInputs,
    pub count: Option<Count>,
    /// Maximiser reported for diagnostics (k for the rate bound, l for the
    /// single-frequency bound).
    pub argmax: Option<f64>,
    pub flags: Option<RegimeFlags>,
}

impl BoundReport {
    fn lower(name: &'static str, value: f64, inputs: BoundInputs) -> Self {
        BoundReport { name, kind: BoundKind::Lower, value, center: f64::NAN, radius: f64::NAN, inputs, count: None, argmax: None, flags: None }
    }

    /// true when the count overflowed 128-bit integers.
    pub fn overflowed(&self) -> bool {
        matches!(self.count, Some(Count::Overflow { .. }))
    }
}

fn check_common(eps: f64, n: f64) -> Result<()> {
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(Error::InvalidArgument(format!("eps = {eps}")));
    }
    if !(n >= 1.0) {
        return Err(Error::InvalidArgument(format!("n = {n} must be at least 1")));
    }
    Ok(())
}

/// ε² C(d+α, d) / n: polynomials of degree α in d variables.
pub fn taylor_lower_bound(d: u64, alpha: u64, eps: f64, n: f64) -> Result<BoundReport> {
    check_common(eps, n)?;
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    let inputs = BoundInputs { n, d: d as usize, alpha_or_beta: Some(alpha as f64), eps, ..Default::default() };
    let (value, count) = match binomial_exact(d + alpha, d) {
        Some(c) => (eps * eps * c as f64 / n, Count::Exact(c)),
        None => {
            let ln = ln_binomial((d + alpha) as f64, d as f64);
            ((2.0 * eps.ln() + ln - n.ln()).exp(), Count::Overflow { ln_count: ln })
        }
    };
    Ok(BoundReport { count: Some(count), ..BoundReport::lower("taylor", value, inputs) })
}

/// ε² (2ω+1)ᵈ / n: frequencies with ‖m‖∞ ≤ ω.
pub fn fourier_lower_bound(d: u64, omega: u64, eps: f64, n: f64) -> Result<BoundReport> {
    check_common(eps, n)?;
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    let inputs = BoundInputs { n, d: d as usize, omega: Some(omega as f64), eps, ..Default::default() };
    let base = 2 * omega as u128 + 1;
    let exact = u32::try_from(d).ok().and_then(|e| base.checked_pow(e));
    let (value, count) = match exact {
        Some(c) => (eps * eps * c as f64 / n, Count::Exact(c)),
        None => {
            let ln = d as f64 * (base as f64).ln();
            ((2.0 * eps.ln() + ln - n.ln()).exp(), Count::Overflow { ln_count: ln })
        }
    };
    Ok(BoundReport { count: Some(count), ..BoundReport::lower("fourier", value, inputs) })
}

/// ε² d / (n - d + 1) for linear regression in dimension d.
pub fn ols_minimax_bound(d: usize, n: usize, eps: f64) -> Result<BoundReport> {
    check_common(eps, n as f64)?;
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    if n <= d {
        return Err(Error::InvalidRegime(format!("needs n > d, got n = {n}, d = {d}")));
    }
    let inputs = BoundInputs { n: n as f64, d, eps, ..Default::default() };
    Ok(BoundReport::lower("ols", eps * eps * d as f64 / (n - d + 1) as f64, inputs))
}

/// (1/6) ε^(4α/(2α+d)) D^(2d/(2α+d)) n^(-2α/(2α+d)) for spectra decaying
/// like k^(-2α/d) with constant D². The maximiser of the underlying
/// max-min is k = (nD²/ε²)^(d/(2α+d)).
pub fn rate_lower_bound(alpha: f64, d: usize, big_d: f64, eps: f64, n: f64) -> Result<BoundReport> {
    check_common(eps, n)?;
    if !(alpha > 0.0) || !(big_d > 0.0) || d == 0 {
        return Err(Error::NonPositiveInput("alpha, D and d must be positive".into()));
    }
    let df = d as f64;
    let s = 2.0 * alpha + df;
    let value = eps.powf(4.0 * alpha / s) * big_d.powf(2.0 * df / s) * n.powf(-2.0 * alpha / s) / 6.0;
    let k = (n * big_d * big_d / (eps * eps)).powf(df / s);
    let inputs = BoundInputs { n, d, alpha_or_beta: Some(alpha), eps, big_d: Some(big_d), ..Default::default() };
    Ok(BoundReport { argmax: Some(k), ..BoundReport::lower("rate", value, inputs) })
}

/// Lower bound on inf_λ ε²𝒩₂/n + 𝒮 for a single-frequency target under a
/// Matérn kernel on 𝕋ᵈ:
/// max_l (lπ^((l-1)/2) ε² / (2^(l-1) Γ((l-1)/2) n))^γ (1+‖m‖²)^(γl/2), γ = 4β/(4β+l).
/// The l = 1 term vanishes because 1/Γ(0) = 0.
pub fn single_frequency_lower_bound(beta: f64, d: usize, m: &[i64], eps: f64, n: f64) -> Result<BoundReport> {
    check_common(eps, n)?;
    if m.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: m.len() });
    }
    if !(2.0 * beta > d as f64) {
        return Err(Error::HypothesisViolated(format!("needs 2β > d, got β = {beta}, d = {d}")));
    }
    let m2: f64 = m.iter().map(|&x| (x * x) as f64).sum();
    let mut best = 0.0;
    let mut best_l = 1.0;
    for l in 2..=d {
        let lf = l as f64;
        let gamma = 4.0 * beta / (4.0 * beta + lf);
        let ln_base = lf.ln() + (lf - 1.0) / 2.0 * PI.ln() + 2.0 * eps.ln()
            - (lf - 1.0) * 2f64.ln()
            - ln_gamma_fn((lf - 1.0) / 2.0)
            - n.ln();
        let v = (gamma * ln_base + gamma * lf / 2.0 * (1.0 + m2).ln()).exp();
        if v > best {
            best = v;
            best_l = lf;
        }
    }
    let inputs = BoundInputs { n, d, alpha_or_beta: Some(beta), omega: Some(m2.sqrt()), eps, ..Default::default() };
    Ok(BoundReport { argmax: Some(best_l), ..BoundReport::lower("single_frequency", best, inputs) })
}

/// Inputs of the upper-lower band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandInputs {
    pub n1: f64,
    pub n2: f64,
    pub n_plus: f64,
    pub s: f64,
    pub trace_sigma: f64,
    pub norm_fstar_sq: f64,
    pub eps: f64,
    pub n: f64,
    /// Constant in exp(-c aₙ); not pinned by the theory.
    pub c: f64,
}

/// Band center ε²𝒩₂/n + 𝒮 with radius
/// 40𝒩₁(aₙε²𝒩₁/n + aₙ^(1/2)𝒮) + 56𝒩₁(tr Σ ε²/n + ‖f*‖²) exp(-c aₙ), aₙ = 𝒩₊/n.
pub fn theorem_band(b: &BandInputs) -> Result<BoundReport> {
    let all = [b.n1, b.n2, b.n_plus, b.s, b.trace_sigma, b.norm_fstar_sq, b.eps, b.c];
    if all.iter().any(|v| !(*v >= 0.0)) {
        return Err(Error::InvalidArgument("band inputs must be nonnegative".into()));
    }
    check_common(b.eps, b.n)?;
    let a_n = b.n_plus / b.n;
    let e2 = b.eps * b.eps;
    let center = e2 * b.n2 / b.n + b.s;
    let radius = 40.0 * b.n1 * (a_n * e2 * b.n1 / b.n + a_n.sqrt() * b.s)
        + 56.0 * b.n1 * (b.trace_sigma * e2 / b.n + b.norm_fstar_sq) * (-b.c * a_n).exp();
    let flags = RegimeFlags {
        very_high_sample: a_n <= 1.0,
        high_sample: b.n2 <= b.n,
        at_transition: (b.n - b.n1).abs() <= 0.5,
    };
    Ok(BoundReport {
        name: "band",
        kind: BoundKind::Band,
        value: center,
        center,
        radius,
        inputs: BoundInputs { n: b.n, eps: b.eps, ..Default::default() },
        count: None,
        argmax: None,
        flags: Some(flags),
    })
}
