//! Row-by-row vector forms and the upper-triangle pair index.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, RealMatrix};
use crate::error::{Error, Result};

/// Row-by-row complex vector form.
pub fn vec_c(a: &ComplexMatrix) -> Vec<Complex64> {
    a.as_slice().to_vec()
}

/// `[Re(vec_c(a)); Im(vec_c(a))]`.
pub fn vec_r(a: &ComplexMatrix) -> Vec<f64> {
    let s = a.as_slice();
    s.iter().map(|z| z.re).chain(s.iter().map(|z| z.im)).collect()
}

/// Row-by-row form of a real matrix.
pub fn vec_real(a: &RealMatrix) -> Vec<f64> {
    a.as_slice().to_vec()
}

pub fn vec_forms(a: &ComplexMatrix) -> (Vec<Complex64>, Vec<f64>) {
    (vec_c(a), vec_r(a))
}

pub fn from_vec_c(rows: usize, cols: usize, v: &[Complex64]) -> Result<ComplexMatrix> {
    ComplexMatrix::from_row_major(rows, cols, v.to_vec())
}

/// Inverse of [`vec_r`].
pub fn from_vec_r(rows: usize, cols: usize, v: &[f64]) -> Result<ComplexMatrix> {
    let n = rows * cols;
    if v.len() != 2 * n {
        return Err(Error::mismatch(2 * n, v.len()));
    }
    let data = (0..n).map(|k| Complex64::new(v[k], v[n + k])).collect();
    ComplexMatrix::from_row_major(rows, cols, data)
}

/// 1-based index of the pair `(i, j)`, `1 <= i < j <= n`, in lexicographic
/// order: `(1,2) -> 1`, `(1,n) -> n-1`, `(2,3) -> n`, `(n-1,n) -> n(n-1)/2`.
pub fn alpha_index(i: usize, j: usize, n: usize) -> Result<usize> {
    if i == 0 || i >= j || j > n {
        return Err(Error::invalid(format!(
            "pair index needs 1 <= i < j <= n, got ({i}, {j}) with n = {n}"
        )));
    }
    Ok((i - 1) * (2 * n - i) / 2 + (j - i))
}

/// All pairs `(i, j)`, 1-based, in `alpha_index` order.
pub fn alpha_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

/// `x mod v` with values in `{1..v}`, so that `u*v mod v == v`.
pub fn mod1(x: i64, v: usize) -> usize {
    assert!(v > 0, "mod1 needs a positive modulus");
    let v = v as i64;
    ((x - 1).rem_euclid(v) + 1) as usize
}
