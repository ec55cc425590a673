use crate::kernels::{Density, DomainSpec, Points};
use crate::target::TargetFunction;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// SplitMix64 finaliser.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable seed for a stream identified by (base, parts...).
pub fn stream_seed(base: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(mix(base), |h, &p| mix(h ^ mix(p)))
}

pub fn stream_rng(base: u64, parts: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(stream_seed(base, parts))
}

/// i.i.d. inputs: uniform on the torus or cube, standard normal on
/// Gaussian Euclidean space, uniform on the centred cube of volume 1/ρ∞
/// for a bounded density.
pub fn sample_inputs<R: Rng + ?Sized>(domain: &DomainSpec, n: usize, rng: &mut R) -> Points {
    let d = domain.dim();
    let mut data = Vec::with_capacity(n * d);
    for _ in 0..n * d {
        let v = match *domain {
            DomainSpec::Torus { .. } => rng.random::<f64>(),
            DomainSpec::Cube { lower, upper, .. } => lower + (upper - lower) * rng.random::<f64>(),
            DomainSpec::Euclidean { density: Density::Gaussian, .. } => rng.sample(StandardNormal),
            DomainSpec::Euclidean { density: Density::Bounded { rho_inf }, d } => {
                let side = rho_inf.powf(-1.0 / d as f64);
                side * (rng.random::<f64>() - 0.5)
            }
        };
        data.push(v);
    }
    Points::new(d, data).expect("consistent dimension")
}

/// Yᵢ = f*(Xᵢ) + ε ξᵢ with ξᵢ standard normal.
pub fn sample_labels<R: Rng + ?Sized>(target: &TargetFunction, x: &Points, eps: f64, rng: &mut R) -> Vec<f64> {
    x.iter()
        .map(|p| {
            let xi: f64 = rng.sample(StandardNormal);
            target.eval(p) + if eps == 0.0 { 0.0 } else { eps * xi }
        })
        .collect()
}
