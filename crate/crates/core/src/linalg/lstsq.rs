use super::{dot, Matrix};
use crate::error::{Error, Result};

/// Thin singular value decomposition A = U diag(s) Vᵀ from one-sided Jacobi.
/// `u_t` holds the left vectors as rows, `v_t` the right vectors as rows.
#[derive(Debug, Clone)]
pub struct Svd {
    pub singular_values: Vec<f64>,
    pub u_t: Matrix,
    pub v_t: Matrix,
}

impl Svd {
    pub fn compute(a: &Matrix) -> Result<Self> {
        let (n, p) = (a.rows(), a.cols());
        // columns of A stored as rows
        let mut u = a.transpose();
        let mut v = Matrix::identity(p);
        let eps = f64::EPSILON;
        let mut converged = false;
        for _sweep in 0..80 {
            let mut rotated = false;
            for i in 0..p {
                for j in i + 1..p {
                    let alpha = dot(u.row(i), u.row(i));
                    let beta = dot(u.row(j), u.row(j));
                    let gamma = dot(u.row(i), u.row(j));
                    if gamma == 0.0 || gamma.abs() <= eps * (alpha * beta).sqrt() {
                        continue;
                    }
                    rotated = true;
                    let zeta = (beta - alpha) / (2.0 * gamma);
                    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    rotate_rows(&mut u, i, j, c, s);
                    rotate_rows(&mut v, i, j, c, s);
                }
            }
            if !rotated {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence { iterations: 80 });
        }
        let mut s: Vec<f64> = (0..p).map(|i| dot(u.row(i), u.row(i)).sqrt()).collect();
        for (i, si) in s.iter().enumerate() {
            if *si > 0.0 {
                for x in u.row_mut(i) {
                    *x /= si;
                }
            }
        }
        let mut order: Vec<usize> = (0..p).collect();
        order.sort_by(|&a, &b| s[b].total_cmp(&s[a]));
        let u_t = Matrix::from_fn(p, n, |r, k| u[(order[r], k)]);
        let v_t = Matrix::from_fn(p, p, |r, k| v[(order[r], k)]);
        s = order.iter().map(|&i| s[i]).collect();
        Ok(Self { singular_values: s, u_t, v_t })
    }

    /// Numerical rank with the usual max(n, p) * eps * s_max cutoff.
    pub fn rank(&self) -> usize {
        let tol = self.tolerance();
        self.singular_values.iter().filter(|&&s| s > tol).count()
    }

    fn tolerance(&self) -> f64 {
        let smax = self.singular_values.first().copied().unwrap_or(0.0);
        self.u_t.cols().max(self.v_t.cols()) as f64 * f64::EPSILON * smax
    }

    /// Minimum-norm least-squares solution of A x = b.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        if b.len() != self.u_t.cols() {
            return Err(Error::DimensionMismatch { expected: self.u_t.cols(), found: b.len() });
        }
        let tol = self.tolerance();
        let p = self.v_t.cols();
        let mut x = vec![0.0; p];
        for (r, &s) in self.singular_values.iter().enumerate() {
            if s <= tol {
                break;
            }
            let coef = dot(self.u_t.row(r), b) / s;
            for (xi, vi) in x.iter_mut().zip(self.v_t.row(r)) {
                *xi += coef * vi;
            }
        }
        Ok(x)
    }
}

fn rotate_rows(m: &mut Matrix, i: usize, j: usize, c: f64, s: f64) {
    let cols = m.cols();
    let (lo, hi) = m.data.split_at_mut(j * cols);
    let ri = &mut lo[i * cols..i * cols + cols];
    let rj = &mut hi[..cols];
    for k in 0..cols {
        let a = ri[k];
        let b = rj[k];
        ri[k] = c * a - s * b;
        rj[k] = s * a + c * b;
    }
}

/// Minimum-norm least-squares solution of A x = b.
pub fn min_norm_lstsq(a: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    Svd::compute(a)?.solve(b)
}
