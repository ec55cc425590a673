use super::{dot, Matrix, MulAddCounter, SymMatrix};
use crate::error::{Error, Result};

/// Lower Cholesky factor, A = L Lᵀ.
#[derive(Debug, Clone)]
pub struct Cholesky {
    l: Matrix,
}

impl Cholesky {
    pub fn factor(a: &SymMatrix) -> Result<Self> {
        Self::factor_counted(a, &mut MulAddCounter::default())
    }

    pub fn factor_counted(a: &SymMatrix, counter: &mut MulAddCounter) -> Result<Self> {
        let n = a.n();
        let mut l = Matrix::zeros(n, n);
        let mut ops = 0u64;
        for j in 0..n {
            let (head, tail) = l.data.split_at_mut(j * n + n);
            let lj = &mut head[j * n..j * n + n];
            let s = a.get(j, j) - dot(&lj[..j], &lj[..j]);
            ops += j as u64;
            if !(s > 0.0) || !s.is_finite() {
                return Err(Error::NotPositiveDefinite { pivot: j });
            }
            let d = s.sqrt();
            lj[j] = d;
            let lj = &lj[..j];
            for (r, row) in tail.chunks_exact_mut(n).enumerate() {
                let i = j + 1 + r;
                row[j] = (a.get(i, j) - dot(&row[..j], lj)) / d;
            }
            ops += ((n - j - 1) * (j + 1)) as u64;
        }
        counter.add(ops);
        Ok(Self { l })
    }

    /// Factor, retrying once with a diagonal jitter of 1e-10 * trace / n.
    /// Returns the factor and the jitter that was added (zero if none).
    pub fn factor_with_jitter(a: &SymMatrix) -> Result<(Self, f64)> {
        match Self::factor(a) {
            Ok(c) => Ok((c, 0.0)),
            Err(Error::NotPositiveDefinite { .. }) => {
                let n = a.n().max(1) as f64;
                let jitter = 1e-10 * a.trace().abs().max(f64::MIN_POSITIVE) / n;
                let mut b = a.clone();
                b.add_diagonal(jitter);
                Ok((Self::factor(&b)?, jitter))
            }
            Err(e) => Err(e),
        }
    }

    pub fn n(&self) -> usize {
        self.l.rows()
    }

    pub fn l(&self) -> &Matrix {
        &self.l
    }

    /// Solve L z = b in place.
    pub fn forward_in_place(&self, b: &mut [f64]) {
        let n = self.n();
        for i in 0..n {
            let row = self.l.row(i);
            b[i] = (b[i] - dot(&row[..i], &b[..i])) / row[i];
        }
    }

    /// Solve Lᵀ z = b in place.
    pub fn backward_in_place(&self, b: &mut [f64]) {
        let n = self.n();
        for i in (0..n).rev() {
            let bi = b[i] / self.l[(i, i)];
            b[i] = bi;
            let row = self.l.row(i);
            for k in 0..i {
                b[k] -= row[k] * bi;
            }
        }
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let mut counter = MulAddCounter::default();
        self.solve_counted(b, &mut counter)
    }

    pub fn solve_counted(&self, b: &[f64], counter: &mut MulAddCounter) -> Result<Vec<f64>> {
        if b.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: b.len() });
        }
        let mut x = b.to_vec();
        self.forward_in_place(&mut x);
        self.backward_in_place(&mut x);
        let n = self.n() as u64;
        counter.add(n * (n + 1));
        Ok(x)
    }

    /// Solve A X = B column by column.
    pub fn solve_matrix(&self, b: &Matrix) -> Result<Matrix> {
        if b.rows() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: b.rows() });
        }
        let mut out = Matrix::zeros(b.rows(), b.cols());
        for j in 0..b.cols() {
            let x = self.solve(&b.column(j))?;
            for (i, v) in x.into_iter().enumerate() {
                out[(i, j)] = v;
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> SymMatrix {
        let n = self.n();
        let inv = self.solve_matrix(&Matrix::identity(n)).expect("square");
        // symmetrise away rounding
        SymMatrix::from_fn(n, |i, j| 0.5 * (inv[(i, j)] + inv[(j, i)]))
    }

    pub fn log_det(&self) -> f64 {
        2.0 * (0..self.n()).map(|i| self.l[(i, i)].ln()).sum::<f64>()
    }
}

/// Solve A X = B for symmetric positive definite A.
pub fn cholesky_solve(a: &SymMatrix, b: &Matrix) -> Result<Matrix> {
    Cholesky::factor(a)?.solve_matrix(b)
}
