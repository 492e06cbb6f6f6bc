//! Linear constraints on a real phase matrix `R`, written over `vec(R)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{is_prime, RealMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    /// Equal row differences at row distance `p^m`.
    Order { p: u64, m: u32 },
    /// A pinned entry of the first row or column.
    Dephasing,
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstraintKind::Order { p, m } => write!(f, "order {}", p.pow(*m)),
            ConstraintKind::Dephasing => f.write_str("dephasing"),
        }
    }
}

/// `sum coeffs[t].1 * vec(R)[coeffs[t].0] == 0`, indices row by row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub kind: ConstraintKind,
    pub coeffs: Vec<(usize, f64)>,
}

impl Constraint {
    pub fn residual(&self, r: &RealMatrix) -> f64 {
        let v = r.as_slice();
        self.coeffs.iter().map(|&(k, c)| c * v[k]).sum()
    }
}

pub(crate) fn check_prime_power(p: u64, k: u32) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("p = {p} is not prime")));
    }
    if k < 2 {
        return Err(Error::invalid(format!(
            "families need k >= 2, got k = {k} (F_p has defect 0 and no family)"
        )));
    }
    p.checked_pow(k)
        .filter(|&n| n <= 1 << 12)
        .map(|n| n as usize)
        .ok_or_else(|| Error::invalid(format!("p^k = {p}^{k} is too large")))
}

/// All constraints of orders `p^0 .. p^{k-1}` followed by the `2p^k - 1`
/// dephasing constraints.
///
/// Order `p^m`: with `j = i + p^m` for `i` in `1..=p^k - p^m`, and
/// `Delta_l = R[i][l] - R[j][l]`, require
/// `Delta_l == Delta_{l + t p^{k-m-1}}` for `l` in `1..=p^{k-m-1}` and
/// `t` in `1..p`.
pub fn constraints(p: u64, k: u32) -> Result<Vec<Constraint>> {
    let n = check_prime_power(p, k)?;
    let pu = p as usize;
    let idx = |row: usize, col: usize| (row - 1) * n + (col - 1);
    let mut out = Vec::new();
    for m in 0..k {
        let dist = pu.pow(m);
        let stride = pu.pow(k - m - 1);
        for i in 1..=n - dist {
            let j = i + dist;
            for l in 1..=stride {
                for t in 1..pu {
                    let l2 = l + t * stride;
                    out.push(Constraint {
                        kind: ConstraintKind::Order { p, m },
                        coeffs: vec![
                            (idx(i, l), 1.0),
                            (idx(j, l), -1.0),
                            (idx(i, l2), -1.0),
                            (idx(j, l2), 1.0),
                        ],
                    });
                }
            }
        }
    }
    out.extend(dephasing_constraints(n));
    Ok(out)
}

/// `R[i][1] = 0` for every row and `R[1][j] = 0` for `j >= 2`.
pub fn dephasing_constraints(n: usize) -> Vec<Constraint> {
    let rows = (0..n).map(|i| i * n);
    let cols = 1..n;
    rows.chain(cols)
        .map(|k| Constraint {
            kind: ConstraintKind::Dephasing,
            coeffs: vec![(k, 1.0)],
        })
        .collect()
}

/// Dense `constraints x N^2` matrix.
pub fn constraint_matrix(cs: &[Constraint], n: usize) -> RealMatrix {
    let mut a = RealMatrix::zeros(cs.len(), n * n);
    for (r, c) in cs.iter().enumerate() {
        for &(k, v) in &c.coeffs {
            a[(r, k)] += v;
        }
    }
    a
}

/// Number of order constraints of order `p^m`:
/// `p^{k-m-1} (p-1) p^m (p^{k-m} - 1)`.
pub fn order_constraint_tally(p: u64, k: u32, m: u32) -> u64 {
    p.pow(k - m - 1) * (p - 1) * p.pow(m) * (p.pow(k - m) - 1)
}

/// `(p^k)^2 - (k+1) p^k + k p^{k-1}`.
pub fn order_constraint_total(p: u64, k: u32) -> u64 {
    let n = p.pow(k);
    n * n + k as u64 * p.pow(k - 1) - (k as u64 + 1) * n
}

/// `p^{k-1} ((k-1) p - k) + 1`.
pub fn family_dimension(p: u64, k: u32) -> u64 {
    (p.pow(k - 1) as i64 * ((k as i64 - 1) * p as i64 - k as i64) + 1) as u64
}
