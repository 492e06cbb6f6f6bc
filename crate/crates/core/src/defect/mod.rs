//! The defect `d(U)` of a unitary matrix through four independent
//! characterizations, plus the phasing span and the bound `b(U)`.

mod build;
mod equivalence;
mod methods;
mod report;

pub use build::{
    build_b_stack, build_bij, build_m, build_mc, build_w, dg_jacobian, phasing_tangents, unitarity_residual_g,
};
pub use equivalence::{apply_equivalence, direct_sum, EquivalenceTransform};
pub use methods::{
    bound_b, defect, defect_by, defect_via_b_span, defect_via_dg, defect_via_m, defect_via_w, spanning_dimension,
    zero_count,
};
pub use report::{DefectReport, Method, ReportJson, ZERO_ENTRY_TOL};
