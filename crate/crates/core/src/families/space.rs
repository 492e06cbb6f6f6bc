use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::constraints::{check_prime_power, constraint_matrix, constraints, family_dimension, Constraint};
use crate::error::{Error, Result};
use crate::matcore::{gcd_lcm, nullspace_basis, numerical_rank, RankPolicy, RealMatrix};
use crate::pcm::{cycles, pcm_from_parameters, pcm_to_solution, ParameterCycleMatrix, PcmParams, StepBlock};

/// Basis entries below this are rounded to exact zeros.
pub const ROUND_TOL: f64 = 1e-12;
/// Every basis element must satisfy every constraint to this accuracy.
pub const CONSTRAINT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// Constrained parameter cycle matrices, `R = P F`.
    PcmConstrained,
    /// Nullspace of the row-difference and dephasing constraints.
    DirectConstraints,
}

impl std::str::FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pcm" | "pcm_constrained" => Ok(Construction::PcmConstrained),
            "direct" | "direct_constraints" => Ok(Construction::DirectConstraints),
            _ => Err(Error::invalid(format!("unknown construction {s:?}, use direct or pcm"))),
        }
    }
}

/// A linear space of real phase matrices with the constraints defining it.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSpace {
    pub p: u64,
    pub k: u32,
    pub n: usize,
    pub construction: Construction,
    pub constraints: Vec<Constraint>,
    pub basis: Vec<RealMatrix>,
}

impl ConstraintSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Largest constraint residual over the basis.
    pub fn max_residual(&self) -> f64 {
        self.basis
            .iter()
            .flat_map(|r| self.constraints.iter().map(move |c| c.residual(r).abs()))
            .fold(0.0, f64::max)
    }

    /// `sum phi_i R^(i)`.
    pub fn combine(&self, phi: &[f64]) -> Result<RealMatrix> {
        if phi.len() != self.dim() {
            return Err(Error::mismatch(self.dim(), phi.len()));
        }
        let mut r = RealMatrix::zeros(self.n, self.n);
        for (b, &x) in self.basis.iter().zip(phi) {
            r = r.add(&b.scale(x))?;
        }
        Ok(r)
    }

    /// Basis elements as `vec(R)` rows of a `dim x N^2` matrix.
    pub fn basis_matrix(&self) -> RealMatrix {
        let rows: Vec<Vec<f64>> = self.basis.iter().map(|b| b.as_slice().to_vec()).collect();
        if rows.is_empty() {
            return RealMatrix::zeros(0, self.n * self.n);
        }
        RealMatrix::from_rows(&rows).expect("equal sizes")
    }

    fn validate(self) -> Result<Self> {
        let expected = family_dimension(self.p, self.k) as usize;
        if self.dim() != expected {
            return Err(Error::Internal(format!(
                "{:?} space for {}^{} has dimension {}, expected {expected}",
                self.construction,
                self.p,
                self.k,
                self.dim()
            )));
        }
        let rank = numerical_rank(&self.basis_matrix(), RankPolicy::default()).rank;
        if rank != expected {
            return Err(Error::Internal(format!("basis has rank {rank}, expected {expected}")));
        }
        let worst = self.max_residual();
        if worst > CONSTRAINT_TOL {
            return Err(Error::Internal(format!("basis violates a constraint by {worst:.3e}")));
        }
        Ok(self)
    }
}

fn round_small(mut r: RealMatrix) -> RealMatrix {
    for x in r.as_mut_slice() {
        if x.abs() < ROUND_TOL {
            *x = 0.0;
        }
    }
    r
}

/// The space cut out by the row-difference and dephasing constraints; its
/// dimension is computed from the nullspace, then checked against
/// `p^{k-1}((k-1)p - k) + 1`.
pub fn constraint_space_direct(p: u64, k: u32) -> Result<ConstraintSpace> {
    let cs = constraints(p, k)?;
    let n = p.pow(k) as usize;
    let a = constraint_matrix(&cs, n);
    let basis = nullspace_basis(&a, RankPolicy::default())
        .into_iter()
        .map(|v| round_small(RealMatrix::from_row_major(n, n, v).expect("N^2 entries")))
        .collect();
    ConstraintSpace {
        p,
        k,
        n,
        construction: Construction::DirectConstraints,
        constraints: cs,
        basis,
    }
    .validate()
}

/// Steps whose column pair may carry nonzero entries: `p | s`.
fn pcm_family_steps(p: u64, n: usize) -> impl Iterator<Item = usize> {
    crate::pcm::pcm_steps(n).filter(move |s| s % p as usize == 0)
}

/// Number of free real parameters of [`constrained_pcm`].
pub fn constrained_pcm_parameter_count(p: u64, k: u32) -> Result<usize> {
    let n = check_prime_power(p, k)?;
    let steps: usize = pcm_family_steps(p, n)
        .map(|s| 2 * (gcd_lcm(n as u64, s as u64).unwrap().0 as usize - 1))
        .sum();
    Ok(steps + if p == 2 { n / 2 - 1 } else { 0 })
}

/// The PCM of size `p^k` with cycle 0 of every column zeroed, columns
/// `s+1` with `p` not dividing `s` zeroed, and the first column set to
/// minus the row sums of the rest.
///
/// `free` lists, for each step `s` divisible by `p` in increasing order,
/// the cycles `1..gcd(N,s)` as `(re, im)` pairs, then for `p = 2` the central
/// cycles `1..N/2`.
pub fn constrained_pcm(p: u64, k: u32, free: &[f64]) -> Result<ParameterCycleMatrix> {
    let n = check_prime_power(p, k)?;
    let count = constrained_pcm_parameter_count(p, k)?;
    if free.len() != count {
        return Err(Error::mismatch(count, free.len()));
    }
    let mut it = free.iter().copied();
    let steps: Vec<StepBlock> = crate::pcm::pcm_steps(n)
        .map(|s| {
            let g = cycles(n, s).len();
            let cycles = (0..g)
                .map(|c| {
                    if c == 0 || s % p as usize != 0 {
                        [0.0, 0.0]
                    } else {
                        [it.next().unwrap(), it.next().unwrap()]
                    }
                })
                .collect();
            StepBlock { j: s + 1, cycles }
        })
        .collect();
    let central: Vec<f64> = if n % 2 == 0 {
        (0..n / 2)
            .map(|c| if c == 0 { 0.0 } else { it.next().unwrap() })
            .collect()
    } else {
        Vec::new()
    };
    let rest = pcm_from_parameters(PcmParams {
        n,
        first_col: vec![0.0; n],
        steps: steps.clone(),
        central: central.clone(),
    })?;
    let first_col = (0..n)
        .map(|r| {
            let s: Complex64 = rest.matrix().row(r).iter().sum();
            -s.re
        })
        .collect();
    pcm_from_parameters(PcmParams {
        n,
        first_col,
        steps,
        central,
    })
}

/// `R = P F` over the unit vectors of the constrained PCM parameters.
pub fn constraint_space_pcm(p: u64, k: u32) -> Result<ConstraintSpace> {
    let n = check_prime_power(p, k)?;
    let count = constrained_pcm_parameter_count(p, k)?;
    let mut basis = Vec::with_capacity(count);
    for t in 0..count {
        let mut v = vec![0.0; count];
        v[t] = 1.0;
        basis.push(round_small(pcm_to_solution(&constrained_pcm(p, k, &v)?)?));
    }
    ConstraintSpace {
        p,
        k,
        n,
        construction: Construction::PcmConstrained,
        constraints: constraints(p, k)?,
        basis,
    }
    .validate()
}

pub fn constraint_space(p: u64, k: u32, construction: Construction) -> Result<ConstraintSpace> {
    match construction {
        Construction::DirectConstraints => constraint_space_direct(p, k),
        Construction::PcmConstrained => constraint_space_pcm(p, k),
    }
}

/// Rank of the two bases side by side; equals the common dimension exactly
/// when they span the same space.
pub fn joint_rank(a: &ConstraintSpace, b: &ConstraintSpace) -> Result<usize> {
    let joint = a.basis_matrix().vstack(&b.basis_matrix())?;
    Ok(numerical_rank(&joint, RankPolicy::default()).rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_of_both_constructions() {
        for (p, k, d) in [(2, 2, 1), (2, 3, 5), (3, 2, 4)] {
            let a = constraint_space_direct(p, k).unwrap();
            let b = constraint_space_pcm(p, k).unwrap();
            assert_eq!((a.dim(), b.dim()), (d, d));
            assert_eq!(joint_rank(&a, &b).unwrap(), d);
        }
    }

    #[test]
    fn basis_is_dephased() {
        let s = constraint_space_direct(2, 3).unwrap();
        for b in &s.basis {
            assert!((0..8).all(|t| b[(0, t)] == 0.0 && b[(t, 0)] == 0.0));
        }
    }

    #[test]
    fn parameter_count_matches_dimension() {
        for (p, k) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
            assert_eq!(
                constrained_pcm_parameter_count(p, k).unwrap() as u64,
                family_dimension(p, k)
            );
        }
    }

    #[test]
    fn construction_names() {
        assert_eq!("pcm".parse::<Construction>().unwrap(), Construction::PcmConstrained);
        assert_eq!(
            "direct".parse::<Construction>().unwrap(),
            Construction::DirectConstraints
        );
        assert!("x".parse::<Construction>().is_err());
    }
}
