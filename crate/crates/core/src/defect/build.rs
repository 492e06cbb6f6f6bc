//! The matrices whose ranks give the defect.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{alpha_index, alpha_pairs, ComplexMatrix, RealMatrix, UnitaryMatrix};

fn require_n2(u: &ComplexMatrix) -> Result<usize> {
    let n = u.rows();
    if n < 2 || !u.is_square() {
        return Err(Error::invalid(format!(
            "need a square matrix of size N >= 2, got {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    Ok(n)
}

/// `N^2 x N(N-1)/2`. Column `alpha(i,j)` is `vec_c` of the matrix whose row
/// `i` is `U[i,:] * conj(U[j,:])`, row `j` its negation, zeros elsewhere.
pub fn build_mc(u: &UnitaryMatrix) -> Result<ComplexMatrix> {
    let n = require_n2(u)?;
    let mut mc = ComplexMatrix::zeros(n * n, n * (n - 1) / 2);
    for (i, j) in alpha_pairs(n) {
        let col = alpha_index(i, j, n)? - 1;
        let (i0, j0) = (i - 1, j - 1);
        for l in 0..n {
            let z = u[(i0, l)] * u[(j0, l)].conj();
            mc[(i0 * n + l, col)] = z;
            mc[(j0 * n + l, col)] = -z;
        }
    }
    Ok(mc)
}

/// `[Re(Mc) | Im(Mc)]`, `N^2 x N(N-1)`.
pub fn build_m(u: &UnitaryMatrix) -> Result<RealMatrix> {
    let mc = build_mc(u)?;
    mc.re().hstack(&mc.im())
}

/// `[Mc | -conj(Mc)]`, `N^2 x N(N-1)`.
pub fn build_w(u: &UnitaryMatrix) -> Result<ComplexMatrix> {
    let mc = build_mc(u)?;
    mc.hstack(&mc.conj().scale(Complex64::new(-1.0, 0.0)))
}

/// `B^(i,j)` for 1-based `i, j` in `1..=N` (`i == j` allowed).
///
/// Row `i` holds `U[j,l] * conj(U[j,i])` for `l != i`, column `i` holds
/// minus the conjugates of the same values, and `(i,i)` is zero.
pub fn build_bij(u: &UnitaryMatrix, i: usize, j: usize) -> Result<ComplexMatrix> {
    let n = u.size();
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::invalid(format!("B index ({i}, {j}) outside 1..={n}")));
    }
    let (i0, j0) = (i - 1, j - 1);
    let mut b = ComplexMatrix::zeros(n, n);
    for l in (0..n).filter(|&l| l != i0) {
        let z = u[(j0, l)] * u[(j0, i0)].conj();
        b[(i0, l)] = z;
        b[(l, i0)] = -z.conj();
    }
    Ok(b)
}

/// The `N^2 x N^2` matrix whose rows are `vec_c(B^(i,j))`, row index
/// `(i-1)N + (j-1)`.
pub fn build_b_stack(u: &UnitaryMatrix) -> Result<ComplexMatrix> {
    let n = u.size();
    let mut rows = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            rows.push(build_bij(u, i, j)?.into_vec());
        }
    }
    ComplexMatrix::from_rows(&rows)
}

fn check_phase_shape(u: &UnitaryMatrix, r: &RealMatrix) -> Result<usize> {
    let n = u.size();
    if r.rows() != n || r.cols() != n {
        return Err(Error::mismatch(
            format!("{n}x{n} phase matrix"),
            format!("{}x{}", r.rows(), r.cols()),
        ));
    }
    Ok(n)
}

/// Unitarity defect of `U o exp(iR)` as a real vector of length `N(N-1)`:
/// entry `alpha(i,j)` is `Re(-i S_ij)` and entry `N(N-1)/2 + alpha(i,j)` is
/// `Im(-i S_ij)`, where `S_ij = sum_k U_ik conj(U_jk) e^{i(R_ik - R_jk)}`.
pub fn unitarity_residual_g(u: &UnitaryMatrix, r: &RealMatrix) -> Result<Vec<f64>> {
    let n = check_phase_shape(u, r)?;
    let half = n * (n - 1) / 2;
    let mut g = vec![0.0; 2 * half];
    for (k, (i, j)) in alpha_pairs(n).enumerate() {
        let (i0, j0) = (i - 1, j - 1);
        let s: Complex64 = (0..n)
            .map(|c| u[(i0, c)] * u[(j0, c)].conj() * Complex64::from_polar(1.0, r[(i0, c)] - r[(j0, c)]))
            .sum();
        let v = -Complex64::i() * s;
        g[k] = v.re;
        g[half + k] = v.im;
    }
    Ok(g)
}

/// Jacobian of [`unitarity_residual_g`] at `R = 0`, `N(N-1) x N^2`, columns
/// indexed by `vec(R)` row by row.
pub fn dg_jacobian(u: &UnitaryMatrix) -> RealMatrix {
    let n = u.size();
    let half = n * (n - 1) / 2;
    let mut d = RealMatrix::zeros(2 * half, n * n);
    for (k, (i, j)) in alpha_pairs(n).enumerate() {
        let (i0, j0) = (i - 1, j - 1);
        for c in 0..n {
            let z = u[(i0, c)] * u[(j0, c)].conj();
            d[(k, i0 * n + c)] += z.re;
            d[(k, j0 * n + c)] -= z.re;
            d[(half + k, i0 * n + c)] += z.im;
            d[(half + k, j0 * n + c)] -= z.im;
        }
    }
    d
}

/// The `2N x 2N^2` real matrix of phasing tangents: rows
/// `vec_r(i diag(e_k) U)` for `k = 1..N`, then `vec_r(U i diag(e_l))`.
pub fn phasing_tangents(u: &UnitaryMatrix) -> RealMatrix {
    let n = u.size();
    let i = Complex64::i();
    let mut rows = Vec::with_capacity(2 * n);
    for k in 0..n {
        let t = ComplexMatrix::from_fn(n, n, |a, b| {
            if a == k {
                i * u[(a, b)]
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        rows.push(crate::matcore::vec_r(&t));
    }
    for l in 0..n {
        let t = ComplexMatrix::from_fn(n, n, |a, b| {
            if b == l {
                u[(a, b)] * i
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        rows.push(crate::matcore::vec_r(&t));
    }
    RealMatrix::from_rows(&rows).expect("rows of equal length")
}
