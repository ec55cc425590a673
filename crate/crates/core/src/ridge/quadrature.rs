use crate::error::{Error, Result};
use crate::experiments::{sample_inputs, stream_rng};
use crate::kernels::{DomainSpec, Points};
use serde::{Deserialize, Serialize};

/// How ∫ · dρ is approximated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum QuadratureSpec {
    /// Midpoint grid (512 nodes in d = 1, 256² in d = 2) on tori and
    /// cubes, 10⁴ Monte-Carlo points otherwise.
    #[default]
    Auto,
    /// Midpoint rule with `per_axis` nodes per coordinate (d ≤ 2).
    Grid { per_axis: usize },
    /// Fresh i.i.d. test points from the input law.
    MonteCarlo { points: usize, seed: u64 },
}

/// Equal-weight quadrature nodes.
#[derive(Debug, Clone)]
pub struct QuadratureNodes {
    pub points: Points,
    /// One-dimensional node coordinates for tensor grids.
    pub grid_axis: Option<Vec<f64>>,
    pub monte_carlo: bool,
}

/// Quadrature estimate with its Monte-Carlo standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiskValue {
    pub value: f64,
    pub std_error: f64,
}

impl RiskValue {
    pub(crate) fn from_squared_errors(errs: &[f64], monte_carlo: bool) -> Self {
        let (mean, se) = crate::numeric::mean_and_se(errs);
        RiskValue { value: mean, std_error: if monte_carlo { se } else { 0.0 } }
    }
}

impl QuadratureSpec {
    pub fn resolve(&self, domain: &DomainSpec) -> QuadratureSpec {
        match (*self, domain) {
            (QuadratureSpec::Auto, DomainSpec::Torus { d, .. } | DomainSpec::Cube { d, .. }) if *d <= 2 => {
                QuadratureSpec::Grid { per_axis: if *d == 1 { 512 } else { 256 } }
            }
            (QuadratureSpec::Auto, _) => QuadratureSpec::MonteCarlo { points: 10_000, seed: 0 },
            (q, _) => q,
        }
    }

    pub fn nodes(&self, domain: &DomainSpec) -> Result<QuadratureNodes> {
        match self.resolve(domain) {
            QuadratureSpec::Grid { per_axis } => {
                let d = domain.dim();
                let min = match d {
                    1 => 512,
                    2 => 256,
                    _ => return Err(Error::QuadratureMismatch(format!("grid quadrature needs d <= 2, got {d}"))),
                };
                if per_axis < min {
                    return Err(Error::QuadratureMismatch(format!("grid needs at least {min} nodes per axis in d = {d}")));
                }
                grid_nodes(domain, per_axis)
            }
            QuadratureSpec::MonteCarlo { points, seed } => {
                if points < 10_000 {
                    return Err(Error::QuadratureMismatch("Monte-Carlo quadrature needs at least 10^4 points".into()));
                }
                let mut rng = stream_rng(seed, &[0x7175_6164]);
                Ok(QuadratureNodes { points: sample_inputs(domain, points, &mut rng), grid_axis: None, monte_carlo: true })
            }
            QuadratureSpec::Auto => unreachable!(),
        }
    }
}

/// Tensor midpoint grid with `per_axis` nodes per coordinate on a torus or
/// cube, without the minimum-size requirement of risk quadrature.
pub fn grid_nodes(domain: &DomainSpec, per_axis: usize) -> Result<QuadratureNodes> {
    let (lo, hi) = match *domain {
        DomainSpec::Torus { .. } => (0.0, 1.0),
        DomainSpec::Cube { lower, upper, .. } => (lower, upper),
        DomainSpec::Euclidean { .. } => {
            return Err(Error::QuadratureMismatch("grid quadrature is defined on tori and cubes only".into()))
        }
    };
    if per_axis == 0 {
        return Err(Error::QuadratureMismatch("grid needs at least one node".into()));
    }
    let d = domain.dim();
    let total = (per_axis as f64).powi(d as i32);
    if total > 5e7 {
        return Err(Error::QuadratureMismatch(format!("grid of {total} nodes is too large")));
    }
    let h = (hi - lo) / per_axis as f64;
    let axis: Vec<f64> = (0..per_axis).map(|i| lo + (i as f64 + 0.5) * h).collect();
    let mut data = Vec::with_capacity(total as usize * d);
    let mut idx = vec![0usize; d];
    loop {
        data.extend(idx.iter().map(|&i| axis[i]));
        let mut p = d;
        loop {
            if p == 0 {
                let points = Points::new(d, data)?;
                return Ok(QuadratureNodes { points, grid_axis: Some(axis), monte_carlo: false });
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < per_axis {
                break;
            }
            idx[p] = 0;
        }
    }
}
