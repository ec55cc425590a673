use super::{dot, Matrix, MulAddCounter, SymMatrix};
use crate::error::{Error, Result};

/// Inverse of the bordered matrix [[A, x], [xᵀ, b]] given A⁻¹.
pub fn block_inverse_extend(a_inv: &SymMatrix, x: &[f64], b: f64) -> Result<SymMatrix> {
    block_inverse_extend_counted(a_inv, x, b, &mut MulAddCounter::default())
}

pub fn block_inverse_extend_counted(
    a_inv: &SymMatrix,
    x: &[f64],
    b: f64,
    counter: &mut MulAddCounter,
) -> Result<SymMatrix> {
    let n = a_inv.n();
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.len() });
    }
    let y = a_inv.matvec(x)?;
    let schur = b - dot(x, &y);
    if !(schur.abs() >= 1e-14 * b.abs()) || schur == 0.0 {
        return Err(Error::SingularBorder { schur });
    }
    let c = 1.0 / schur;
    let m = n + 1;
    let mut out = Matrix::zeros(m, m);
    for i in 0..n {
        let cyi = c * y[i];
        let src = a_inv.as_matrix().row(i);
        for j in i..n {
            let v = src[j] + cyi * y[j];
            out[(i, j)] = v;
            out[(j, i)] = v;
        }
        out[(i, n)] = -cyi;
        out[(n, i)] = -cyi;
    }
    out[(n, n)] = c;
    let nn = n as u64;
    counter.add(nn * nn + nn + nn * (nn + 1) / 2 + nn);
    Ok(SymMatrix::from_matrix_unchecked(out))
}

impl SymMatrix {
    pub(crate) fn from_matrix_unchecked(m: Matrix) -> Self {
        SymMatrix(m)
    }
}
