use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{random::rng, ComplexMatrix, UnitaryMatrix};
use num_complex::Complex64;

/// `V = P_r D_r U D_c P_c`, entrywise
/// `V[i][j] = e^{i(row_phases[s(i)] + col_phases[t(j)])} U[s(i)][t(j)]`
/// with `s = row_perm`, `t = col_perm`. Permutations are 0-based here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceTransform {
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub row_phases: Vec<f64>,
    pub col_phases: Vec<f64>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&k| k < p.len() && !std::mem::replace(&mut seen[k], true))
}

impl EquivalenceTransform {
    pub fn identity(n: usize) -> Self {
        EquivalenceTransform {
            row_perm: (0..n).collect(),
            col_perm: (0..n).collect(),
            row_phases: vec![0.0; n],
            col_phases: vec![0.0; n],
        }
    }

    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = rng(seed);
        let mut row_perm: Vec<usize> = (0..n).collect();
        let mut col_perm: Vec<usize> = (0..n).collect();
        row_perm.shuffle(&mut rng);
        col_perm.shuffle(&mut rng);
        let tau = std::f64::consts::TAU;
        EquivalenceTransform {
            row_perm,
            col_perm,
            row_phases: (0..n).map(|_| rng.gen_range(0.0..tau)).collect(),
            col_phases: (0..n).map(|_| rng.gen_range(0.0..tau)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.row_perm.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.size();
        if [self.col_perm.len(), self.row_phases.len(), self.col_phases.len()] != [n; 3] {
            return Err(Error::invalid("equivalence transform parts have different sizes"));
        }
        if !is_permutation(&self.row_perm) || !is_permutation(&self.col_perm) {
            return Err(Error::invalid("row_perm and col_perm must be permutations of 0..N"));
        }
        Ok(())
    }
}

pub fn apply_equivalence(u: &UnitaryMatrix, t: &EquivalenceTransform) -> Result<UnitaryMatrix> {
    t.validate()?;
    let n = u.size();
    if t.size() != n {
        return Err(Error::mismatch(n, t.size()));
    }
    let v = ComplexMatrix::from_fn(n, n, |i, j| {
        let (a, b) = (t.row_perm[i], t.col_perm[j]);
        Complex64::from_polar(1.0, t.row_phases[a] + t.col_phases[b]) * u[(a, b)]
    });
    UnitaryMatrix::new(v)
}

/// Block-diagonal `U_1 + U_2 + ... + U_r`.
pub fn direct_sum(blocks: &[UnitaryMatrix]) -> Result<UnitaryMatrix> {
    if blocks.is_empty() {
        return Err(Error::invalid("direct sum of no blocks"));
    }
    let n: usize = blocks.iter().map(|b| b.size()).sum();
    let mut m = ComplexMatrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.size() {
            for j in 0..b.size() {
                m[(off + i, off + j)] = b[(i, j)];
            }
        }
        off += b.size();
    }
    UnitaryMatrix::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::random_unitary;

    #[test]
    fn identity_transform_is_a_no_op() {
        let u = random_unitary(4, 3);
        assert_eq!(apply_equivalence(&u, &EquivalenceTransform::identity(4)).unwrap(), u);
    }

    #[test]
    fn random_transform_keeps_unitarity() {
        let u = random_unitary(6, 3);
        let v = apply_equivalence(&u, &EquivalenceTransform::random(6, 8)).unwrap();
        assert!(v.unitarity_residual() <= u.unitarity_residual() + 1e-13);
    }

    #[test]
    fn bad_transforms_are_rejected() {
        let u = random_unitary(3, 0);
        let mut t = EquivalenceTransform::identity(3);
        t.row_perm = vec![0, 0, 2];
        assert!(apply_equivalence(&u, &t).is_err());
        assert!(apply_equivalence(&u, &EquivalenceTransform::identity(4)).is_err());
        assert!(direct_sum(&[]).is_err());
    }

    #[test]
    fn direct_sum_layout() {
        let a = random_unitary(2, 1);
        let b = random_unitary(3, 2);
        let s = direct_sum(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(s.size(), 5);
        assert_eq!(s[(1, 1)], a[(1, 1)]);
        assert_eq!(s[(4, 2)], b[(2, 0)]);
        assert_eq!(s[(0, 3)], Complex64::new(0.0, 0.0));
    }
}
