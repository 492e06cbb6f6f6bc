#![allow(dead_code)]

use rand::Rng;
use unitary_defect::defect::{dg_jacobian, unitarity_residual_g};
use unitary_defect::fourier::fourier_matrix;
use unitary_defect::matcore::random::rng;
use unitary_defect::matcore::{random_unitary, RealMatrix, UnitaryMatrix};

pub const TABLE: [u64; 32] = [
    0, 0, 0, 1, 0, 4, 0, 5, 4, 8, 0, 17, 0, 12, 16, 17, 0, 28, 0, 33, 24, 20, 0, 53, 16, 24, 28, 49, 0, 76, 0, 49,
];

/// Rank by Gaussian elimination with partial pivoting; pivots at or below
/// `tol * max|a|` count as zero.
pub fn gauss_rank(a: &RealMatrix, tol: f64) -> usize {
    let (m, n) = (a.rows(), a.cols());
    let mut w: Vec<Vec<f64>> = (0..m).map(|i| a.row(i).to_vec()).collect();
    let cut = tol * a.max_abs().max(f64::MIN_POSITIVE);
    let mut rank = 0;
    for c in 0..n {
        if rank == m {
            break;
        }
        let (piv, val) = (rank..m)
            .map(|r| (r, w[r][c].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if val <= cut {
            continue;
        }
        w.swap(rank, piv);
        for r in rank + 1..m {
            let f = w[r][c] / w[rank][c];
            if f != 0.0 {
                for cc in c..n {
                    w[r][cc] -= f * w[rank][cc];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// 1 to 3 blocks, Fourier or Haar-random, total size at most 10.
pub fn random_blocks(seed: u64) -> Vec<UnitaryMatrix> {
    let mut g = rng(seed);
    let r = g.gen_range(1..=3);
    let mut left = 10;
    let mut blocks = Vec::new();
    for b in 0..r {
        let max = (left - (r - b - 1)).min(5);
        let n = g.gen_range(1..=max);
        left -= n;
        blocks.push(if g.gen_bool(0.5) {
            fourier_matrix(n).unwrap()
        } else {
            random_unitary(n, g.gen())
        });
    }
    blocks
}

/// Largest entrywise gap between `dg_jacobian` and central differences of
/// `unitarity_residual_g` at `R = 0`.
pub fn jacobian_fd_error(u: &UnitaryMatrix, h: f64) -> f64 {
    let n = u.size();
    let d = dg_jacobian(u);
    let mut worst: f64 = 0.0;
    for c in 0..n * n {
        let bump = |s: f64| RealMatrix::from_fn(n, n, |i, j| if i * n + j == c { s } else { 0.0 });
        let plus = unitarity_residual_g(u, &bump(h)).unwrap();
        let minus = unitarity_residual_g(u, &bump(-h)).unwrap();
        for (row, (a, b)) in plus.iter().zip(&minus).enumerate() {
            worst = worst.max(((a - b) / (2.0 * h) - d[(row, c)]).abs());
        }
    }
    worst
}
