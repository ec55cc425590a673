use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// How a translation-invariant kernel is placed on the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorusKernel {
    /// q(d_T(x, y) / σ) with the wrap-around distance.
    #[default]
    WrapAround,
    /// Σ_z q(‖x - y + z‖ / σ) over integer shifts z. Always positive
    /// semidefinite, with eigenvalues given by the Fourier transform.
    Periodized,
}

/// Input density on Euclidean space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Density {
    /// Standard normal.
    Gaussian,
    /// Any density bounded by `rho_inf`; sampling uses the uniform law on
    /// the centred cube of volume 1/rho_inf.
    Bounded { rho_inf: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    /// Unit torus [0, 1)^d with the uniform measure.
    Torus {
        d: usize,
        #[serde(default)]
        kernel_sum: TorusKernel,
    },
    /// Cube [lower, upper]^d with the uniform measure.
    Cube { d: usize, lower: f64, upper: f64 },
    Euclidean { d: usize, density: Density },
}

impl DomainSpec {
    pub fn torus(d: usize) -> Self {
        DomainSpec::Torus { d, kernel_sum: TorusKernel::WrapAround }
    }

    pub fn periodized_torus(d: usize) -> Self {
        DomainSpec::Torus { d, kernel_sum: TorusKernel::Periodized }
    }

    pub fn cube(d: usize, lower: f64, upper: f64) -> Self {
        DomainSpec::Cube { d, lower, upper }
    }

    pub fn dim(&self) -> usize {
        match *self {
            DomainSpec::Torus { d, .. } | DomainSpec::Cube { d, .. } | DomainSpec::Euclidean { d, .. } => d,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim() == 0 {
            return Err(Error::InvalidArgument("domain dimension must be at least 1".into()));
        }
        match *self {
            DomainSpec::Cube { lower, upper, .. } if !(upper > lower) => {
                Err(Error::InvalidArgument(format!("empty cube [{lower}, {upper}]")))
            }
            DomainSpec::Euclidean { density: Density::Bounded { rho_inf }, .. } if !(rho_inf > 0.0) => {
                Err(Error::NonPositiveInput(format!("rho_inf = {rho_inf}")))
            }
            _ => Ok(()),
        }
    }

    /// Torus coordinates may be any real (they are read modulo 1); cube
    /// coordinates must lie in the cube.
    pub fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() });
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::DomainViolation(format!("non-finite coordinate in {x:?}")));
        }
        if let DomainSpec::Cube { lower, upper, .. } = *self {
            let slack = 1e-12 * (upper - lower);
            if x.iter().any(|&v| v < lower - slack || v > upper + slack) {
                return Err(Error::DomainViolation(format!("{x:?} outside [{lower}, {upper}]^d")));
            }
        }
        Ok(())
    }

    /// Upper bound on the input density, when one exists.
    pub fn rho_inf(&self) -> Option<f64> {
        match *self {
            DomainSpec::Torus { .. } => Some(1.0),
            DomainSpec::Cube { d, lower, upper } => Some((upper - lower).powi(-(d as i32))),
            DomainSpec::Euclidean { d, density: Density::Gaussian } => {
                Some((2.0 * std::f64::consts::PI).powf(-(d as f64) / 2.0))
            }
            DomainSpec::Euclidean { density: Density::Bounded { rho_inf }, .. } => Some(rho_inf),
        }
    }
}

/// n points in d dimensions, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Points {
    d: usize,
    data: Vec<f64>,
}

impl Points {
    pub fn new(d: usize, data: Vec<f64>) -> Result<Self> {
        if d == 0 || !data.len().is_multiple_of(d) {
            return Err(Error::DimensionMismatch { expected: d, found: data.len() });
        }
        Ok(Self { d, data })
    }

    pub fn empty(d: usize) -> Self {
        Self { d, data: vec![] }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(d * rows.len());
        for r in rows {
            if r.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: r.len() });
            }
            data.extend_from_slice(r);
        }
        Self::new(d, data)
    }

    /// One-dimensional points from scalars.
    pub fn from_scalars(xs: &[f64]) -> Self {
        Self { d: 1, data: xs.to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.data.len() / self.d
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.d)
    }

    pub fn push(&mut self, x: &[f64]) -> Result<()> {
        if x.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: x.len() });
        }
        self.data.extend_from_slice(x);
        Ok(())
    }

    /// First k points.
    pub fn prefix(&self, k: usize) -> Points {
        Points { d: self.d, data: self.data[..k * self.d].to_vec() }
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }
}
