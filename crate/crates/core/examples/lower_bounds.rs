//! Minimax lower bounds and the upper-lower band for a few regimes.

use kernel_regimes::bounds::{
    fourier_lower_bound, ols_minimax_bound, rate_lower_bound, single_frequency_lower_bound, taylor_lower_bound,
    theorem_band, BandInputs,
};

fn main() -> kernel_regimes::Result<()> {
    for degree in 0..=6 {
        let r = taylor_lower_bound(100, degree, 1.0, 1e6)?;
        println!("taylor d=100 degree={degree}: {:.4e} ({:?} monomials)", r.value, r.count.unwrap());
    }
    println!("fourier d=2 omega=4: {:.4e}", fourier_lower_bound(2, 4, 0.5, 1e3)?.value);
    println!("ols d=5 n=20: {:.4}", ols_minimax_bound(5, 20, 1.0)?.value);
    let rate = rate_lower_bound(2.0, 1, 1.0, 1.0, 1e4)?;
    println!("rate alpha=2: {:.4e} at k = {:.1}", rate.value, rate.argmax.unwrap());
    println!("single frequency m=(20,0,0): {:.4}", single_frequency_lower_bound(2.0, 3, &[20, 0, 0], 1.0, 100.0)?.value);

    let band = BandInputs { n1: 40.0, n2: 30.0, n_plus: 40.0, s: 0.01, trace_sigma: 1.0, norm_fstar_sq: 1.0, eps: 0.5, n: 0.0, c: 1.0 };
    for n in [40.0, 400.0, 4e4] {
        let r = theorem_band(&BandInputs { n, ..band })?;
        println!("band n={n}: {:.4e} +- {:.4e} {:?}", r.center, r.radius, r.flags.unwrap());
    }
    Ok(())
}
