//! Enumeration of ℤᵈ by shells of constant ‖m‖∞.

use crate::error::{Error, Result};
use crate::numeric::Neumaier;

/// Largest box (2M+1)ᵈ the adaptive sums may visit.
pub const LATTICE_CAP: f64 = 1e8;

/// Result of a truncated lattice sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSum {
    pub value: f64,
    /// Largest ‖m‖∞ included.
    pub cutoff: usize,
    /// (M+1)·(last shell) / value, the certificate that stopped the sum.
    pub tail_ratio: f64,
}

/// Number of points with ‖m‖∞ = k.
pub fn shell_size(d: usize, k: usize) -> u64 {
    if k == 0 {
        return 1;
    }
    let a = (2 * k + 1) as u64;
    let b = (2 * k - 1) as u64;
    a.pow(d as u32) - b.pow(d as u32)
}

/// Visit every m ∈ ℤᵈ with ‖m‖∞ = k.
pub fn for_each_in_shell<F: FnMut(&[i64])>(d: usize, k: usize, mut f: F) {
    let mut m = vec![0i64; d];
    shell_rec(&mut m, 0, k as i64, false, -(k as i64), &mut |m, _| f(m));
}

/// Visit every m ∈ ℕᵈ with ‖m‖∞ = k, together with the number of sign
/// patterns 2^#(nonzero) it stands for.
fn for_each_in_orthant_shell<F: FnMut(&[i64], f64)>(d: usize, k: usize, mut f: F) {
    let mut m = vec![0i64; d];
    shell_rec(&mut m, 0, k as i64, false, 0, &mut |m, _| {
        let nz = m.iter().filter(|&&x| x != 0).count();
        f(m, (1u64 << nz) as f64)
    });
}

fn shell_rec<F: FnMut(&[i64], ())>(m: &mut Vec<i64>, pos: usize, k: i64, hit: bool, lo: i64, f: &mut F) {
    let d = m.len();
    if pos == d {
        if hit {
            f(m, ());
        }
        return;
    }
    if pos == d - 1 && !hit {
        // the last coordinate must reach the shell
        m[pos] = k;
        f(m, ());
        if lo < 0 && k > 0 {
            m[pos] = -k;
            f(m, ());
        }
        return;
    }
    for v in lo..=k {
        m[pos] = v;
        shell_rec(m, pos + 1, k, hit || v.abs() == k, lo, f);
    }
}

/// Σ over ℤᵈ of an isotropic term t(‖m‖²), by shells, stopping when
/// (k+1)·shell ≤ tol·sum.
pub fn isotropic_sum<F: Fn(f64) -> f64>(d: usize, tol: f64, term: F) -> Result<LatticeSum> {
    let mut total = Neumaier::new();
    let mut k = 0usize;
    loop {
        let mut shell = Neumaier::new();
        for_each_in_orthant_shell(d, k, |m, w| {
            let m2: f64 = m.iter().map(|&x| (x * x) as f64).sum();
            shell.add(w * term(m2));
        });
        let s = shell.value();
        total.add(s);
        let sum = total.value();
        let ratio = if sum > 0.0 { (k as f64 + 1.0) * s / sum } else { 0.0 };
        if k > 0 && ratio <= tol {
            return Ok(LatticeSum { value: sum, cutoff: k, tail_ratio: ratio });
        }
        if ((2 * (k + 1) + 1) as f64).powi(d as i32) > LATTICE_CAP {
            return Err(Error::TruncationTooSmall { cutoff: k, tail_ratio: ratio });
        }
        k += 1;
    }
}

/// Σ over the box ‖m‖∞ ≤ cutoff of an isotropic term.
pub fn isotropic_sum_fixed<F: Fn(f64) -> f64>(d: usize, cutoff: usize, term: F) -> LatticeSum {
    let mut total = Neumaier::new();
    let mut last = 0.0;
    for k in 0..=cutoff {
        let mut shell = Neumaier::new();
        for_each_in_orthant_shell(d, k, |m, w| {
            let m2: f64 = m.iter().map(|&x| (x * x) as f64).sum();
            shell.add(w * term(m2));
        });
        last = shell.value();
        total.add(last);
    }
    let sum = total.value();
    let ratio = if sum > 0.0 { (cutoff as f64 + 1.0) * last / sum } else { 0.0 };
    LatticeSum { value: sum, cutoff, tail_ratio: ratio }
}
