use super::polylog_l;
use crate::error::{Error, Result};
use crate::kernels::Family;
use std::f64::consts::PI;

fn sobolev_beta(family: Family, d: usize) -> Result<Option<f64>> {
    match family {
        Family::Gaussian => Ok(None),
        Family::Matern { beta } | Family::SobolevProfile { beta } => Ok(Some(beta)),
        Family::Exponential => Ok(Some((d as f64 + 1.0) / 2.0)),
        Family::Polynomial { .. } => Err(Error::UnsupportedFamily("polynomial".into())),
    }
}

/// Γ((d-1)/2), which is infinite at d = 1 and makes the Sobolev-type
/// constants degenerate there.
fn sphere_gamma(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::NotApplicable("constant involves Γ((d-1)/2), infinite at d = 1".into()));
    }
    Ok(crate::numeric::gamma_fn((d as f64 - 1.0) / 2.0))
}

/// Upper bound on 𝒩₁ for a density bounded by `rho_inf`.
///
/// Sobolev type: 2βρ∞π^((d+1)/2) / Γ((d-1)/2) · λ^(-d/2β) σ^(-d(2β-d)/2β).
/// Gaussian: ρ∞π^((d-1)/2) d / (2σᵈ) · L(λ⁻¹σᵈ).
pub fn capacity_closed_form(family: Family, sigma: f64, lambda: f64, d: usize, rho_inf: f64) -> Result<f64> {
    if !(sigma > 0.0 && lambda > 0.0 && rho_inf > 0.0) {
        return Err(Error::NonPositiveInput("sigma, lambda and rho_inf must be positive".into()));
    }
    let df = d as f64;
    match sobolev_beta(family, d)? {
        None => Ok(rho_inf * PI.powf((df - 1.0) / 2.0) * df / (2.0 * sigma.powi(d as i32))
            * polylog_l(sigma.powi(d as i32) / lambda, d as u32)),
        Some(beta) => {
            let g = sphere_gamma(d)?;
            Ok(2.0 * beta * rho_inf * PI.powf((df + 1.0) / 2.0) / g
                * lambda.powf(-df / (2.0 * beta))
                * sigma.powf(-df * (2.0 * beta - df) / (2.0 * beta)))
        }
    }
}

/// Upper bound on 𝒮 for a target of smoothness α with squared norm
/// `target_norm_sq`.
///
/// Sobolev type (α < β): 4β²π^((d+1)/2)ρ∞‖f‖² / ((β²-α²)Γ((d-1)/2)) · λ^(α/β) σ^((2β-d)α/β).
/// Gaussian (λ⁻¹σᵈ > 1): 2π^((d+1)/2)ρ∞‖f‖² / Γ((d-1)/2)
/// · (σ^(-2d-4α) + 2 ln(2)^(-(d/2+2α)) / (d+2α)) σ^(2α) ln(λ⁻¹σᵈ)^(-α).
pub fn bias_closed_form(
    family: Family,
    sigma: f64,
    lambda: f64,
    alpha: f64,
    d: usize,
    target_norm_sq: f64,
    rho_inf: f64,
) -> Result<f64> {
    if !(sigma > 0.0 && lambda > 0.0 && rho_inf > 0.0 && alpha > 0.0) {
        return Err(Error::NonPositiveInput("sigma, lambda, alpha and rho_inf must be positive".into()));
    }
    let df = d as f64;
    match sobolev_beta(family, d)? {
        Some(beta) => {
            if alpha >= beta {
                return Err(Error::HypothesisViolated(format!("needs alpha < beta, got {alpha} >= {beta}")));
            }
            let g = sphere_gamma(d)?;
            Ok(4.0 * beta * beta * PI.powf((df + 1.0) / 2.0) * rho_inf * target_norm_sq
                / ((beta * beta - alpha * alpha) * g)
                * lambda.powf(alpha / beta)
                * sigma.powf((2.0 * beta - df) * alpha / beta))
        }
        None => {
            let arg = sigma.powi(d as i32) / lambda;
            if arg <= 1.0 {
                return Err(Error::NotApplicable(format!("needs σᵈ/λ > 1, got {arg}")));
            }
            let g = sphere_gamma(d)?;
            let bracket = sigma.powf(-2.0 * df - 4.0 * alpha)
                + 2.0 * 2f64.ln().powf(-(df / 2.0 + 2.0 * alpha)) / (df + 2.0 * alpha);
            Ok(2.0 * PI.powf((df + 1.0) / 2.0) * rho_inf * target_norm_sq / g
                * bracket
                * sigma.powf(2.0 * alpha)
                * arg.ln().powf(-alpha))
        }
    }
}
