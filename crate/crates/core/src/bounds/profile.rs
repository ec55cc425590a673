use crate::error::{Error, Result};
use crate::numeric::golden_section_min;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileRate {
    pub value: f64,
    pub r: f64,
}

/// inf_r ε² c_N n^(-1 + rd/2) + Σ_γ mass·n^(-γr), by golden-section search
/// on r ∈ [0, 2/d (1 + max γ)]. The objective is convex in r.
pub fn profile_rate(gammas: &[(f64, f64)], c_n: f64, eps: f64, d: usize, n: f64) -> Result<ProfileRate> {
    if gammas.is_empty() || gammas.iter().any(|&(g, m)| !(g > 0.0) || !(m > 0.0)) {
        return Err(Error::NonPositiveInput("every (gamma, mass) must be positive".into()));
    }
    if !(n >= 2.0) || d == 0 {
        return Err(Error::InvalidArgument("needs n >= 2 and d >= 1".into()));
    }
    let df = d as f64;
    let ln_n = n.ln();
    let objective = |r: f64| {
        eps * eps * c_n * (ln_n * (-1.0 + r * df / 2.0)).exp()
            + gammas.iter().map(|&(g, m)| m * (-g * r * ln_n).exp()).sum::<f64>()
    };
    let gmax = gammas.iter().map(|g| g.0).fold(0.0, f64::max);
    let (r, value) = golden_section_min(objective, 0.0, 2.0 / df * (1.0 + gmax), 1e-11);
    Ok(ProfileRate { value, r })
}
