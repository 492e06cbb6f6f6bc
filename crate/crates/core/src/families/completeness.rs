use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::constraints::{constraint_matrix, dephasing_constraints, family_dimension};
use super::family::{phase_modulate, random_parameters};
use super::space::constraint_space_direct;
use crate::defect::dg_jacobian;
use crate::error::{Error, Result};
use crate::fourier::fourier_matrix;
use crate::matcore::{column_space_basis, nullspace_with_rank, random::rng, subspace_distance, RankPolicy, RealMatrix};

/// Perturbations leaving unitarity by less than this count as escapes.
pub const ESCAPE_RESIDUAL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompletenessReport {
    pub p: u64,
    pub k: u32,
    pub expected_dim: usize,
    /// Kernel dimension of the linearized dephased-unitarity map.
    pub kernel_dim: usize,
    /// Sine of the largest principal angle between that kernel and the
    /// family tangent space.
    pub subspace_distance: f64,
    pub trials: usize,
    pub radius: f64,
    /// Trials whose off-family perturbation stayed unitary.
    pub escapes: usize,
    pub min_off_family_residual: f64,
}

impl CompletenessReport {
    pub fn linearized_ok(&self) -> bool {
        self.kernel_dim == self.expected_dim && self.subspace_distance <= 1e-8
    }

    pub fn passed(&self) -> bool {
        self.linearized_ok() && self.escapes == 0
    }
}

/// Jacobian at `R = 0` of the map `R -> (g(R), R[i][1], R[1][j])` for
/// `U = F_{p^k}`.
pub fn dephased_jacobian(n: usize) -> Result<RealMatrix> {
    let dg = dg_jacobian(&fourier_matrix(n)?);
    dg.vstack(&constraint_matrix(&dephasing_constraints(n), n))
}

/// Compares the kernel of the linearized dephased-unitarity system with the
/// family tangent space, then checks that random dephased perturbations of
/// Frobenius size `radius`, orthogonal to the family and added to a random
/// member, break unitarity. The sampling half is evidence, not proof.
pub fn local_completeness_check(p: u64, k: u32, trials: usize, radius: f64, seed: u64) -> Result<CompletenessReport> {
    let space = constraint_space_direct(p, k)?;
    let n = space.n;
    if n > 9 {
        return Err(Error::invalid(format!(
            "local completeness is limited to p^k <= 9, got {n}"
        )));
    }
    let (kernel, _) = nullspace_with_rank(&dephased_jacobian(n)?, RankPolicy::default());
    let tangent = column_space_basis(&space.basis_matrix().transpose(), RankPolicy::default());
    let distance = if kernel.len() == tangent.len() {
        subspace_distance(&kernel, &tangent)
    } else {
        1.0
    };

    let f = fourier_matrix(n)?;
    let mut rng = rng(seed);
    let mut escapes = 0;
    let mut min_res = f64::INFINITY;
    for t in 0..trials {
        let mut w = RealMatrix::from_fn(n, n, |i, j| {
            if i == 0 || j == 0 {
                0.0
            } else {
                rng.sample::<f64, _>(StandardNormal)
            }
        });
        // drop the family component
        for b in &tangent {
            let c: f64 = b.iter().zip(w.as_slice()).map(|(x, y)| x * y).sum();
            for (x, y) in w.as_mut_slice().iter_mut().zip(b) {
                *x -= c * y;
            }
        }
        let w = w.scale(radius / w.frobenius_norm());
        let phi: Vec<f64> = random_parameters(space.dim(), seed ^ (t as u64 + 1))
            .into_iter()
            .map(|x| x * radius / std::f64::consts::TAU)
            .collect();
        let r = space.combine(&phi)?.add(&w)?;
        let res = phase_modulate(&f, &r)?.unitarity_residual();
        min_res = min_res.min(res);
        if res <= ESCAPE_RESIDUAL {
            escapes += 1;
        }
    }
    Ok(CompletenessReport {
        p,
        k,
        expected_dim: family_dimension(p, k) as usize,
        kernel_dim: kernel.len(),
        subspace_distance: distance,
        trials,
        radius,
        escapes,
        min_off_family_residual: min_res,
    })
}
