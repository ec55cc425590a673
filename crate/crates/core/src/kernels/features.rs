use super::{DomainSpec, Density, Points};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymMatrix};

/// Exponent vectors of all monomials of total degree ≤ `degree` in `d`
/// variables, in graded lexicographic order.
pub fn monomial_exponents(d: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=degree {
        let mut cur = vec![0u32; d];
        compositions(total, 0, &mut cur, &mut out);
    }
    out
}

fn compositions(rest: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let d = cur.len();
    if pos == d - 1 {
        cur[pos] = rest;
        out.push(cur.clone());
        return;
    }
    for k in (0..=rest).rev() {
        cur[pos] = k;
        compositions(rest - k, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

/// Refuse to materialise feature vectors longer than this.
pub const FEATURE_CAP: u128 = 10_000_000;

/// C(d + degree, d), the number of monomials of total degree ≤ degree.
pub fn monomial_count(d: usize, degree: u32) -> Option<u128> {
    crate::numeric::binomial_exact(d as u64 + degree as u64, d as u64)
}

/// All monomials of x with total degree ≤ `degree`, graded-lex order.
/// Fails with CapacityExceeded (carrying the count) above 10⁷ entries.
pub fn polynomial_features(x: &[f64], degree: u32) -> Result<Vec<f64>> {
    let count = monomial_count(x.len(), degree).unwrap_or(u128::MAX);
    if count > FEATURE_CAP {
        return Err(Error::CapacityExceeded { count });
    }
    Ok(monomial_exponents(x.len(), degree)
        .iter()
        .map(|e| x.iter().zip(e).map(|(v, &k)| v.powi(k as i32)).product())
        .collect())
}

/// Feature matrix with one row per point and one column per monomial.
pub fn polynomial_design(points: &Points, exponents: &[Vec<u32>]) -> Result<Matrix> {
    if let Some(e) = exponents.first() {
        if e.len() != points.dim() {
            return Err(Error::DimensionMismatch { expected: points.dim(), found: e.len() });
        }
    }
    Ok(Matrix::from_fn(points.n(), exponents.len(), |i, j| {
        points.point(i).iter().zip(&exponents[j]).map(|(x, &k)| x.powi(k as i32)).product()
    }))
}

/// E[x^k] for one coordinate under the domain's input law.
fn coordinate_moment(domain: &DomainSpec, k: u32) -> Result<f64> {
    match *domain {
        DomainSpec::Torus { .. } => Ok(1.0 / (k as f64 + 1.0)),
        DomainSpec::Cube { lower, upper, .. } => {
            let p = k as i32 + 1;
            Ok((upper.powi(p) - lower.powi(p)) / (p as f64 * (upper - lower)))
        }
        DomainSpec::Euclidean { density: Density::Gaussian, .. } => {
            if k % 2 == 1 {
                Ok(0.0)
            } else {
                Ok((1..k).step_by(2).map(|j| j as f64).product())
            }
        }
        DomainSpec::Euclidean { density: Density::Bounded { rho_inf }, d } => {
            let h = 0.5 * rho_inf.powf(-1.0 / d as f64);
            let p = k as i32 + 1;
            Ok((h.powi(p) - (-h).powi(p)) / (p as f64 * 2.0 * h))
        }
    }
}

/// E[x^a] for a multi-index a under the domain's input law.
pub fn monomial_moment(domain: &DomainSpec, exponent: &[u32]) -> Result<f64> {
    exponent.iter().map(|&k| coordinate_moment(domain, k)).product()
}

/// Exact E[φ(x) φ(x)ᵀ] for monomial features.
pub fn polynomial_embedding_gram(domain: &DomainSpec, exponents: &[Vec<u32>]) -> Result<SymMatrix> {
    let p = exponents.len();
    let mut m = Matrix::zeros(p, p);
    for i in 0..p {
        for j in i..p {
            let e: Vec<u32> = exponents[i].iter().zip(&exponents[j]).map(|(a, b)| a + b).collect();
            let v = monomial_moment(domain, &e)?;
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    SymMatrix::from_matrix(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_binomials() {
        assert_eq!(monomial_exponents(1, 3).len(), 4);
        assert_eq!(monomial_exponents(2, 2).len(), 6);
        assert_eq!(monomial_exponents(3, 4).len(), 35);
        assert_eq!(monomial_exponents(2, 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn moments() {
        let cube = DomainSpec::cube(1, -1.0, 1.0);
        assert!((monomial_moment(&cube, &[2]).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(monomial_moment(&cube, &[3]).unwrap(), 0.0);
        let g = DomainSpec::Euclidean { d: 1, density: Density::Gaussian };
        assert_eq!(monomial_moment(&g, &[4]).unwrap(), 3.0);
    }

    #[test]
    fn feature_vectors_and_cap() {
        assert_eq!(polynomial_features(&[2.0, 3.0], 1).unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(polynomial_features(&[2.0, 3.0], 3).unwrap().len(), 10);
        assert_eq!(monomial_count(100, 4), Some(4_598_126));
        let big = polynomial_features(&[0.5; 100], 6);
        assert!(matches!(big, Err(Error::CapacityExceeded { count: 1_705_904_746 })));
    }
}
