//! Affine families of dephased complex Hadamard matrices through `F_{p^k}`,
//! built two independent ways: from constrained parameter cycle matrices and
//! from a direct set of linear constraints on the phases.

mod completeness;
mod constraints;
mod explicit;
mod family;
mod space;

pub use completeness::{dephased_jacobian, local_completeness_check, CompletenessReport, ESCAPE_RESIDUAL};
pub use constraints::{
    constraint_matrix, constraints, dephasing_constraints, family_dimension, order_constraint_tally,
    order_constraint_total, Constraint, ConstraintKind,
};
pub use explicit::{explicit_p8, explicit_p9, explicit_r8, explicit_r9, p8_parameters_for_r8, p9_parameters_for_r9};
pub use family::{
    family_member, hadamard_deviation, is_dephased, phase_modulate, random_parameters, verify_family, FamilyMetadata,
    FamilyVerification, HadamardFamily, MODULUS_TOL,
};
pub use space::{
    constrained_pcm, constrained_pcm_parameter_count, constraint_space, constraint_space_direct, constraint_space_pcm,
    joint_rank, ConstraintSpace, Construction, CONSTRAINT_TOL, ROUND_TOL,
};
