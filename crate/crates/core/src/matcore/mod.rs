//! Dense matrices, vector forms, numerical rank and integer number theory.

pub mod io;
mod matrix;
pub mod numtheory;
pub mod random;
pub mod rank;
mod unitary;
pub mod vecform;

pub use matrix::{ComplexMatrix, Entry, Matrix, RealMatrix};
pub use numtheory::{divisors, euler_phi, factorize, gcd, gcd_lcm, is_prime, moebius, Factorization};
pub use random::{random_orthogonal, random_unitary};
pub use rank::{
    column_space_basis, nullspace_basis, nullspace_with_rank, numerical_rank, subspace_distance, RankPolicy,
    RankResult, GAP_WARNING,
};
pub use unitary::{UnitaryMatrix, UNITARY_TOL};
pub use vecform::{alpha_index, alpha_pairs, from_vec_c, from_vec_r, mod1, vec_c, vec_forms, vec_r, vec_real};
