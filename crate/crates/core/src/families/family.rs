use rand::Rng;
use serde::Serialize;

use super::space::{constraint_space, joint_rank, ConstraintSpace, Construction};
use crate::error::{Error, Result};
use crate::fourier::fourier_matrix;
use crate::matcore::{random::rng, ComplexMatrix, RealMatrix, UnitaryMatrix, UNITARY_TOL};

/// Moduli of a member may differ from `1/sqrt(N)` by at most this.
pub const MODULUS_TOL: f64 = 1e-12;

/// `F_{p^k} o exp(i sum phi_i R^(i))` over a basis of phase matrices.
#[derive(Debug, Clone)]
pub struct HadamardFamily {
    pub base: UnitaryMatrix,
    pub space: ConstraintSpace,
}

impl HadamardFamily {
    pub fn new(p: u64, k: u32, construction: Construction) -> Result<Self> {
        let space = constraint_space(p, k, construction)?;
        Ok(HadamardFamily {
            base: fourier_matrix(space.n)?,
            space,
        })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn construction(&self) -> Construction {
        self.space.construction
    }

    pub fn metadata(&self) -> FamilyMetadata {
        FamilyMetadata {
            p: self.space.p,
            k: self.space.k,
            dim: self.dim(),
            construction: self.construction(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyMetadata {
    pub p: u64,
    pub k: u32,
    pub dim: usize,
    pub construction: Construction,
}

/// `U o exp(iR)`.
pub fn phase_modulate(u: &ComplexMatrix, r: &RealMatrix) -> Result<ComplexMatrix> {
    u.hadamard(&ComplexMatrix::phases(r))
}

/// The member at parameters `phi`; a unitarity residual above `1e-10` means
/// the basis is not a family basis and is reported as an internal error.
pub fn family_member(fam: &HadamardFamily, phi: &[f64]) -> Result<UnitaryMatrix> {
    let r = fam.space.combine(phi)?;
    let m = phase_modulate(&fam.base, &r)?;
    UnitaryMatrix::new(m).map_err(|e| Error::Internal(format!("family member is not unitary: {e}")))
}

/// Largest deviation of any modulus from `1/sqrt(N)`.
pub fn hadamard_deviation(u: &ComplexMatrix) -> f64 {
    let target = 1.0 / (u.rows() as f64).sqrt();
    u.as_slice()
        .iter()
        .map(|z| (z.norm() - target).abs())
        .fold(0.0, f64::max)
}

/// First row and column equal to those of `base`, exactly.
pub fn is_dephased(u: &ComplexMatrix, base: &ComplexMatrix) -> bool {
    let n = u.rows();
    (0..n).all(|t| u[(0, t)] == base[(0, t)] && u[(t, 0)] == base[(t, 0)])
}

/// Parameters uniform in `[0, 2 pi)`.
pub fn random_parameters(dim: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng(seed);
    (0..dim).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyVerification {
    pub dim: usize,
    pub expected_dim: usize,
    pub samples: usize,
    pub max_unitarity_residual: f64,
    pub max_modulus_deviation: f64,
    pub all_dephased: bool,
    /// Rank of the two constructions' bases together.
    pub joint_rank: usize,
}

impl FamilyVerification {
    pub fn unitary(&self) -> bool {
        self.max_unitarity_residual <= UNITARY_TOL
    }

    pub fn hadamard(&self) -> bool {
        self.max_modulus_deviation <= MODULUS_TOL
    }

    pub fn same_span(&self) -> bool {
        self.joint_rank == self.dim
    }

    pub fn passed(&self) -> bool {
        self.dim == self.expected_dim && self.unitary() && self.hadamard() && self.all_dephased && self.same_span()
    }
}

/// Samples `samples` random members and checks them, and compares the span
/// with the other construction.
pub fn verify_family(fam: &HadamardFamily, samples: usize, seed: u64) -> Result<FamilyVerification> {
    let mut max_res: f64 = 0.0;
    let mut max_dev: f64 = 0.0;
    let mut dephased = true;
    for t in 0..samples {
        let phi = random_parameters(fam.dim(), seed.wrapping_add(t as u64));
        let r = fam.space.combine(&phi)?;
        // the raw product, so a failure shows up as a number instead of an error
        let m = phase_modulate(&fam.base, &r)?;
        max_res = max_res.max(m.unitarity_residual());
        max_dev = max_dev.max(hadamard_deviation(&m));
        dephased &= is_dephased(&m, &fam.base);
    }
    let other = match fam.construction() {
        Construction::DirectConstraints => Construction::PcmConstrained,
        Construction::PcmConstrained => Construction::DirectConstraints,
    };
    let other = constraint_space(fam.space.p, fam.space.k, other)?;
    Ok(FamilyVerification {
        dim: fam.dim(),
        expected_dim: super::constraints::family_dimension(fam.space.p, fam.space.k) as usize,
        samples,
        max_unitarity_residual: max_res,
        max_modulus_deviation: max_dev,
        all_dephased: dephased,
        joint_rank: joint_rank(&fam.space, &other)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_parameters_give_the_fourier_matrix() {
        let fam = HadamardFamily::new(2, 2, Construction::DirectConstraints).unwrap();
        let m = family_member(&fam, &[0.0]).unwrap();
        assert_eq!(m.matrix(), fam.base.matrix());
    }

    #[test]
    fn members_are_dephased_hadamard() {
        let fam = HadamardFamily::new(3, 2, Construction::PcmConstrained).unwrap();
        let v = verify_family(&fam, 5, 3).unwrap();
        assert!(v.passed(), "{v:?}");
    }

    #[test]
    fn wrong_parameter_length() {
        let fam = HadamardFamily::new(2, 2, Construction::PcmConstrained).unwrap();
        assert!(family_member(&fam, &[0.0, 1.0]).is_err());
    }
}
