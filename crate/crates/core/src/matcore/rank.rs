//! Numerical rank and nullspaces through the SVD.
//!
//! Rank is the number of singular values above
//! `tau = rel_tol * sigma_max * max(rows, cols)`. The ratio between the
//! smallest kept and the largest dropped singular value is reported with
//! every result, so that a rank decided across a narrow gap can be flagged
//! instead of trusted.

use nalgebra::{ComplexField, DMatrix};
use serde::{Deserialize, Serialize};

use super::matrix::{Entry, Matrix};

/// Gap ratios below this value mark a rank as numerically uncertain.
pub const GAP_WARNING: f64 = 1e3;

pub const DEFAULT_REL_TOL: f64 = 1e-11;

/// Matrix entries the SVD backend can factor.
pub trait SvdEntry: Entry + ComplexField<RealField = f64> {}

impl<T: Entry + ComplexField<RealField = f64>> SvdEntry for T {}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankPolicy {
    pub rel_tol: f64,
}

impl Default for RankPolicy {
    fn default() -> Self {
        RankPolicy {
            rel_tol: DEFAULT_REL_TOL,
        }
    }
}

impl RankPolicy {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        RankPolicy { rel_tol }
    }

    fn threshold(&self, sigma_max: f64, rows: usize, cols: usize) -> f64 {
        self.rel_tol * sigma_max * rows.max(cols) as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankResult {
    pub rank: usize,
    /// Nonincreasing, `min(rows, cols)` values.
    pub singular_values: Vec<f64>,
    /// Smallest kept over largest dropped singular value; `+inf` when
    /// nothing nonzero was dropped or nothing was kept.
    pub gap_ratio: f64,
    pub tolerance_used: f64,
}

impl RankResult {
    fn from_singular_values(mut sv: Vec<f64>, rows: usize, cols: usize, policy: RankPolicy) -> Self {
        sv.sort_by(|a, b| b.total_cmp(a));
        let sigma_max = sv.first().copied().unwrap_or(0.0);
        let tol = policy.threshold(sigma_max, rows, cols);
        let rank = sv.iter().take_while(|&&s| s > tol).count();
        let gap_ratio = if rank == 0 || rank == sv.len() {
            f64::INFINITY
        } else {
            sv[rank - 1] / sv[rank]
        };
        RankResult {
            rank,
            singular_values: sv,
            gap_ratio,
            tolerance_used: tol,
        }
    }

    /// True when the kept/dropped boundary is too narrow to trust.
    pub fn is_uncertain(&self) -> bool {
        self.gap_ratio < GAP_WARNING
    }

    /// The runner-up rank: one step across whichever boundary singular
    /// value sits closer (in ratio) to the threshold.
    pub fn alternative_rank(&self) -> usize {
        let tol = self.tolerance_used.max(f64::MIN_POSITIVE);
        let smallest_kept = self.rank.checked_sub(1).map(|k| self.singular_values[k]);
        let largest_dropped = self.singular_values.get(self.rank).copied();
        match (smallest_kept, largest_dropped) {
            (Some(lo), Some(hi)) if lo / tol < tol / hi.max(f64::MIN_POSITIVE) => self.rank - 1,
            (_, Some(_)) => self.rank + 1,
            (Some(_), None) => self.rank - 1,
            (None, None) => self.rank,
        }
    }
}

fn to_nalgebra<T: SvdEntry>(a: &Matrix<T>, pad_rows_to: usize) -> DMatrix<T> {
    let rows = a.rows().max(pad_rows_to);
    DMatrix::from_fn(rows, a.cols(), |i, j| {
        if i < a.rows() {
            a[(i, j)]
        } else {
            <T as Entry>::zero()
        }
    })
}

pub fn numerical_rank<T: SvdEntry>(a: &Matrix<T>, policy: RankPolicy) -> RankResult {
    if a.rows() == 0 || a.cols() == 0 {
        return RankResult {
            rank: 0,
            singular_values: Vec::new(),
            gap_ratio: f64::INFINITY,
            tolerance_used: 0.0,
        };
    }
    let sv = to_nalgebra(a, 0).singular_values_unordered();
    RankResult::from_singular_values(sv.iter().copied().collect(), a.rows(), a.cols(), policy)
}

/// Orthonormal basis of `{x : A x = 0}` together with the rank decision
/// that produced it. `basis.len() + rank.rank == cols`.
pub fn nullspace_with_rank<T: SvdEntry>(a: &Matrix<T>, policy: RankPolicy) -> (Vec<Vec<T>>, RankResult) {
    let n = a.cols();
    if n == 0 {
        return (Vec::new(), numerical_rank(a, policy));
    }
    if a.rows() == 0 {
        let basis = (0..n)
            .map(|k| {
                (0..n)
                    .map(|i| {
                        if i == k {
                            <T as Entry>::one()
                        } else {
                            <T as Entry>::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        return (basis, numerical_rank(a, policy));
    }
    // zero rows keep the spectrum but force a full n x n right factor
    let padded = to_nalgebra(a, n);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors were requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&x, &y| svd.singular_values[y].total_cmp(&svd.singular_values[x]));
    let kept = a.rows().min(n);
    let sv: Vec<f64> = order.iter().take(kept).map(|&k| svd.singular_values[k]).collect();
    let rank = RankResult::from_singular_values(sv, a.rows(), a.cols(), policy);
    let basis = order[rank.rank..]
        .iter()
        .map(|&k| (0..n).map(|j| Entry::conj(v_t[(k, j)])).collect())
        .collect();
    (basis, rank)
}

pub fn nullspace_basis<T: SvdEntry>(a: &Matrix<T>, policy: RankPolicy) -> Vec<Vec<T>> {
    nullspace_with_rank(a, policy).0
}

/// Orthonormal basis of the column span.
pub fn column_space_basis<T: SvdEntry>(a: &Matrix<T>, policy: RankPolicy) -> Vec<Vec<T>> {
    if a.rows() == 0 || a.cols() == 0 {
        return Vec::new();
    }
    let svd = to_nalgebra(a, 0).svd(true, false);
    let u = svd.u.expect("left singular vectors were requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&x, &y| svd.singular_values[y].total_cmp(&svd.singular_values[x]));
    let sv: Vec<f64> = order.iter().map(|&k| svd.singular_values[k]).collect();
    let rank = RankResult::from_singular_values(sv, a.rows(), a.cols(), policy).rank;
    order[..rank]
        .iter()
        .map(|&k| (0..a.rows()).map(|i| u[(i, k)]).collect())
        .collect()
}

/// Sine of the largest principal angle between two subspaces of equal
/// dimension given by orthonormal bases. Zero means the spans coincide.
pub fn subspace_distance<T: SvdEntry>(a: &[Vec<T>], b: &[Vec<T>]) -> f64 {
    if a.len() != b.len() {
        return 1.0;
    }
    if a.is_empty() {
        return 0.0;
    }
    let dim = a[0].len();
    // residual of b after projecting onto span(a)
    let residual = Matrix::from_fn(dim, b.len(), |i, j| {
        let bj = &b[j];
        let mut proj = <T as Entry>::zero();
        for ak in a {
            let coeff = ak
                .iter()
                .zip(bj)
                .fold(<T as Entry>::zero(), |acc, (&x, &y)| acc + Entry::conj(x) * y);
            proj = proj + ak[i] * coeff;
        }
        bj[i] - proj
    });
    numerical_rank(&residual, RankPolicy::default())
        .singular_values
        .first()
        .copied()
        .unwrap_or(0.0)
}
