//! Values frozen from independent high-precision evaluations (mpmath) and
//! hand-derived closed forms.

#![allow(clippy::excessive_precision)]

use kernel_regimes::bounds::{
    fourier_lower_bound, ols_minimax_bound, profile_rate, rate_lower_bound, single_frequency_lower_bound,
    taylor_lower_bound, Count,
};
use kernel_regimes::kernels::{monomial_count, polynomial_features, KernelSpec};
use kernel_regimes::spectral::{polylog_l, SpectralModel};
use kernel_regimes::Error;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(f64::MIN_POSITIVE)
}

#[test]
fn single_frequency_frozen_values() {
    let cases: [(f64, Vec<i64>, f64, f64, f64); 3] = [
        (2.0, vec![20, 0, 0], 1.0, 100.0, 45.28427452718032632),
        (1.5, vec![1, 1], 0.5, 1000.0, 0.004532063096035152207),
        (3.0, vec![3, 0, 0, 0, 0], 0.1, 50.0, 0.3154644467226869619),
    ];
    for (beta, m, eps, n, want) in cases {
        let got = single_frequency_lower_bound(beta, m.len(), &m, eps, n).unwrap().value;
        assert!(close(got, want, 1e-12), "beta={beta} m={m:?}: {got} vs {want}");
    }
}

#[test]
fn single_frequency_one_dimension_is_trivial() {
    assert_eq!(single_frequency_lower_bound(2.0, 1, &[5], 1.0, 10.0).unwrap().value, 0.0);
    assert!(matches!(single_frequency_lower_bound(1.0, 2, &[1, 0], 1.0, 10.0), Err(Error::HypothesisViolated(_))));
}

#[test]
fn polylog_frozen_values() {
    let cases = [
        (0.5, 1, 0.37375223798097305645),
        (0.5, 3, 0.42988732158057926778),
        (2.0, 1, 0.89128871155212330198),
        (2.0, 3, 1.2813803831597696388),
        (10.0, 5, 5.0887758641871826583),
        (1e4, 3, 21.336398277586677049),
        (1e6, 1, 4.1848338828150316099),
        (37.0, 6, 13.813621181880473936),
    ];
    for (x, d, want) in cases {
        let got = polylog_l(x, d);
        assert!(close(got, want, 1e-10), "L({x}, {d}) = {got}, want {want}");
    }
}

#[test]
fn polylog_is_log_in_two_dimensions() {
    for x in [1e-3, 0.7, 5.0, 1e5] {
        assert!(close(polylog_l(x, 2), (1.0f64 + x).ln(), 1e-12));
    }
}

#[test]
fn fourier_transform_frozen_values() {
    let m2 = KernelSpec::matern(2.0, 1.0, 1.0).unwrap();
    let m3 = KernelSpec::matern(3.0, 1.0, 1.0).unwrap();
    let g = KernelSpec::gaussian(1.0, 1.0).unwrap();
    let cases = [
        (m2, 0.0, 4.0),
        (m2, 0.3, 0.19295396408857554709),
        (m3, 0.0, 16.0 / 3.0),
        (m3, 0.3, 0.056505314802085118039),
        (g, 0.0, 1.7724538509055160273),
        (g, 0.3, 0.72913275846717977230),
        (g, 1.7, 7.26315590977623473497e-13),
    ];
    for (k, w, want) in cases {
        let got = k.fourier_transform(&[w]).unwrap();
        assert!(close(got, want, 1e-12), "{:?} at {w}: {got} vs {want}", k.family());
    }
}

#[test]
fn taylor_bound_examples() {
    // C(d+α, d) = C(3, 1) = 3 for d = 1, α = 2
    let r = taylor_lower_bound(1, 2, 1.0, 30.0).unwrap();
    assert!(close(r.value, 0.1, 1e-14));
    assert_eq!(r.count, Some(Count::Exact(3)));
    // C(106, 6) = 1_705_904_746 monomials
    let r = taylor_lower_bound(100, 6, 0.5, 1e12).unwrap();
    assert_eq!(r.count, Some(Count::Exact(1_705_904_746)));
    assert!(close(r.value, 0.25 * 1_705_904_746.0 / 1e12, 1e-13));
    // counts beyond u128 fall back to logarithms
    let huge = taylor_lower_bound(1000, 40, 1.0, 1e6).unwrap();
    assert!(huge.overflowed() && huge.value.is_finite() && huge.value > 0.0);
}

#[test]
fn fourier_bound_counts_lattice_points() {
    // (2ω+1)ᵈ frequencies in the box
    let r = fourier_lower_bound(2, 3, 1.0, 490.0).unwrap();
    assert_eq!(r.count, Some(Count::Exact(49)));
    assert!(close(r.value, 0.1, 1e-14));
}

#[test]
fn ols_bound_closed_form() {
    // ε² d / (n - d + 1), which is ε² d / 2 at n = d + 1
    let r = ols_minimax_bound(5, 6, 1.0).unwrap();
    assert!(close(r.value, 2.5, 1e-14));
    assert!(matches!(ols_minimax_bound(5, 5, 1.0), Err(Error::InvalidRegime(_))));
}

#[test]
fn rate_bound_matches_brute_force_max_min() {
    for &(alpha, d, big_d, eps, n) in &[(1.0, 1, 1.0, 0.5, 1e3), (2.0, 3, 2.0, 1.0, 1e5), (0.7, 2, 0.3, 0.1, 50.0)] {
        let r = rate_lower_bound(alpha, d, big_d, eps, n).unwrap();
        // max over k of min(ε² k / n, D² k^(-2α/d))
        let brute = (1..2_000_000u64)
            .map(|k| {
                let k = k as f64;
                (eps * eps * k / n).min(big_d * big_d * k.powf(-2.0 * alpha / d as f64))
            })
            .fold(0.0, f64::max);
        let ratio = 6.0 * r.value / brute;
        assert!((1.0 / 3.0..=3.0).contains(&ratio), "alpha={alpha} d={d}: ratio {ratio}");
        let k = r.argmax.unwrap();
        assert!(close(eps * eps * k / n, big_d * big_d * k.powf(-2.0 * alpha / d as f64), 1e-10));
    }
}

#[test]
fn profile_rate_is_the_grid_minimum() {
    let gammas = [(0.5, 1.0), (2.0, 0.3)];
    let (c_n, eps, d, n) = (2.0, 0.3, 2, 500.0);
    let p = profile_rate(&gammas, c_n, eps, d, n).unwrap();
    let obj = |r: f64| {
        eps * eps * c_n * n.powf(-1.0 + r * d as f64 / 2.0) + gammas.iter().map(|&(g, m)| m * n.powf(-g * r)).sum::<f64>()
    };
    assert!(close(p.value, obj(p.r), 1e-12));
    let hi = 2.0 / d as f64 * 3.0;
    for i in 0..=10_000 {
        let r = hi * i as f64 / 10_000.0;
        assert!(p.value <= obj(r) * (1.0 + 1e-12));
    }
    // stationarity
    let h = 1e-5;
    let deriv = (obj(p.r + h) - obj(p.r - h)) / (2.0 * h);
    assert!(deriv.abs() < 1e-6 * p.value.max(1.0), "derivative {deriv}");
}

#[test]
fn profile_rate_single_gamma_slope() {
    // with one γ the optimum decays like n^(-2γ/(2γ+d))
    let (g, d) = (1.5, 1);
    let v: Vec<(f64, f64)> = [1e4, 1e6]
        .iter()
        .map(|&n| (n, profile_rate(&[(g, 1.0)], 1.0, 1.0, d, n).unwrap().value))
        .collect();
    let slope = (v[1].1 / v[0].1).ln() / (v[1].0 / v[0].0).ln();
    let want = -2.0 * g / (2.0 * g + d as f64);
    assert!((slope - want).abs() < 1e-3, "{slope} vs {want}");
}

#[test]
fn monomial_counts_and_feature_caps() {
    assert_eq!(monomial_count(100, 6), Some(1_705_904_746));
    assert_eq!(monomial_count(3, 5), Some(56));
    let mut got = polynomial_features(&[0.5, 2.0], 2).unwrap();
    got.sort_by(f64::total_cmp);
    assert_eq!(got, vec![0.25, 0.5, 1.0, 1.0, 2.0, 4.0]);
    assert!(matches!(polynomial_features(&vec![0.1; 100], 6), Err(Error::CapacityExceeded { .. })));
}

#[test]
fn torus_effective_dimension_closed_forms() {
    // constant-only spectrum: Gaussian with huge σ puts all mass at m = 0
    let m = SpectralModel::new(KernelSpec::gaussian(50.0, 1.0).unwrap(), 1).unwrap();
    let e0 = 50.0 * std::f64::consts::PI.sqrt();
    assert!(close(m.effective_dimension(1.0).unwrap(), e0 / (e0 + 1.0), 1e-12));
    assert!(close(m.effective_dimension(2.0).unwrap(), (e0 / (e0 + 1.0)).powi(2), 1e-12));
}
