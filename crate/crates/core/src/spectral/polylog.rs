use crate::numeric::{gamma_fn, integrate};

/// L(x) = -Li_{d/2}(-x) = Σ_{k≥1} (-1)^{k+1} x^k / k^{d/2}.
///
/// Alternating series for x ≤ 0.9, otherwise the Fermi-Dirac integral
/// (1/Γ(s)) ∫ u^{s-1} / (1 + eᵘ/x) du with s = d/2.
pub fn polylog_l(x: f64, d: u32) -> f64 {
    assert!(x >= 0.0, "polylog_l needs x >= 0");
    if x == 0.0 {
        return 0.0;
    }
    let s = d as f64 / 2.0;
    if x <= 0.9 {
        let mut acc = 0.0;
        let mut p = 1.0;
        for k in 1..10_000 {
            p *= x;
            let t = p / (k as f64).powf(s);
            acc += if k % 2 == 1 { t } else { -t };
            if t < 1e-17 {
                break;
            }
        }
        return acc;
    }
    // u = t² removes the endpoint singularity of u^{s-1} for s < 1
    let ln_x = x.ln();
    let upper = (ln_x.max(0.0) + 45.0).sqrt();
    let f = |t: f64| {
        if t == 0.0 {
            return if s == 0.5 { 2.0 / (1.0 + 1.0 / x) } else { 0.0 };
        }
        let u = t * t;
        // 1/(1 + e^{u - ln x}) computed without overflow
        let z = u - ln_x;
        let fermi = if z > 0.0 { (-z).exp() / (1.0 + (-z).exp()) } else { 1.0 / (1.0 + z.exp()) };
        2.0 * t.powf(2.0 * s - 1.0) * fermi
    };
    // split at the Fermi edge where the integrand drops
    let edge = ln_x.max(0.0).sqrt();
    let (a, _) = integrate(f, 0.0, edge.max(1e-3), 1e-300, 1e-12);
    let (b, _) = integrate(f, edge.max(1e-3), upper.max(edge + 1.0), 1e-300, 1e-12);
    (a + b) / gamma_fn(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d2_is_log1p() {
        for x in [0.1, 0.5, 0.95, 5.0, 50.0, 1e6] {
            let v = polylog_l(x, 2);
            let e = (1.0 + x).ln();
            assert!((v - e).abs() < 1e-9 * e, "x={x}: {v} vs {e}");
        }
    }

    #[test]
    fn continuity_at_switch() {
        for d in 1..6 {
            let a = polylog_l(0.9, d);
            let b = polylog_l(0.900_000_001, d);
            assert!((a - b).abs() < 1e-8, "d={d}: {a} {b}");
        }
    }

    #[test]
    fn d4_closed_form() {
        // Li_2(-x) for x = 1 is -π²/12
        let v = polylog_l(1.0, 4);
        assert!((v - std::f64::consts::PI.powi(2) / 12.0).abs() < 1e-10);
    }
}
