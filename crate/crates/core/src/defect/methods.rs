use super::build::{build_b_stack, build_m, build_w, dg_jacobian, phasing_tangents};
use super::report::{DefectReport, Method, ZERO_ENTRY_TOL};
use crate::error::{Error, Result};
use crate::matcore::{numerical_rank, RankPolicy, RankResult, UnitaryMatrix};

/// Which way the defect moves when the rank grows.
#[derive(Clone, Copy)]
enum Sense {
    /// `defect = base - rank`
    Span(usize),
    /// `defect = cols - rank - (2N - 1)`
    Kernel(usize),
}

impl Sense {
    fn defect(self, rank: usize, n: usize) -> Option<usize> {
        match self {
            Sense::Span(base) => base.checked_sub(rank),
            Sense::Kernel(cols) => cols.checked_sub(rank)?.checked_sub(2 * n - 1),
        }
    }
}

fn report(u: &UnitaryMatrix, method: Method, rank: RankResult, sense: Sense) -> Result<DefectReport> {
    let n = u.size();
    let defect = sense.defect(rank.rank, n).ok_or_else(|| {
        Error::Internal(format!(
            "{method}: rank {} is out of range for N = {n}; is the input unitary?",
            rank.rank
        ))
    })?;
    let alternative_defect = if rank.is_uncertain() {
        sense.defect(rank.alternative_rank(), n)
    } else {
        None
    };
    let spanning_dim = spanning_dimension(u);
    let zero_count = zero_count(u);
    Ok(DefectReport {
        n,
        defect,
        method,
        isolated: defect == 0,
        bound_b: defect as i64 + (2 * n - 1) as i64 - zero_count as i64 - spanning_dim as i64,
        rank_result: rank,
        spanning_dim,
        zero_count,
        alternative_defect,
    })
}

fn trivial_report(u: &UnitaryMatrix, method: Method) -> Result<DefectReport> {
    let empty = RankResult {
        rank: 0,
        singular_values: Vec::new(),
        gap_ratio: f64::INFINITY,
        tolerance_used: 0.0,
    };
    report(u, method, empty, Sense::Span(0))
}

/// `(N-1)^2 - rank(M)`. Size 1 gives 0.
pub fn defect_via_m(u: &UnitaryMatrix, policy: RankPolicy) -> Result<DefectReport> {
    let n = u.size();
    if n == 1 {
        return trivial_report(u, Method::MRank);
    }
    let rank = numerical_rank(&build_m(u)?, policy);
    report(u, Method::MRank, rank, Sense::Span((n - 1) * (n - 1)))
}

/// `dim N_C(W^T) - (2N-1)`.
pub fn defect_via_w(u: &UnitaryMatrix, policy: RankPolicy) -> Result<DefectReport> {
    let n = u.size();
    if n == 1 {
        return trivial_report(u, Method::WNullspace);
    }
    let rank = numerical_rank(&build_w(u)?.transpose(), policy);
    report(u, Method::WNullspace, rank, Sense::Kernel(n * n))
}

/// `(N-1)^2 - dim span_C{vec_c(B^(i,j))}` over all `i, j` including `i == j`.
pub fn defect_via_b_span(u: &UnitaryMatrix, policy: RankPolicy) -> Result<DefectReport> {
    let n = u.size();
    if n == 1 {
        return trivial_report(u, Method::BSpan);
    }
    let rank = numerical_rank(&build_b_stack(u)?, policy);
    report(u, Method::BSpan, rank, Sense::Span((n - 1) * (n - 1)))
}

/// `dim N_R(Dg_0) - (2N-1)`.
pub fn defect_via_dg(u: &UnitaryMatrix, policy: RankPolicy) -> Result<DefectReport> {
    let n = u.size();
    if n == 1 {
        return trivial_report(u, Method::DgNullspace);
    }
    let rank = numerical_rank(&dg_jacobian(u), policy);
    report(u, Method::DgNullspace, rank, Sense::Kernel(n * n))
}

pub fn defect_by(u: &UnitaryMatrix, method: Method, policy: RankPolicy) -> Result<DefectReport> {
    match method {
        Method::MRank => defect_via_m(u, policy),
        Method::WNullspace => defect_via_w(u, policy),
        Method::BSpan => defect_via_b_span(u, policy),
        Method::DgNullspace => defect_via_dg(u, policy),
        Method::ClosedForm => Err(Error::invalid(
            "the closed form applies to Fourier matrices only; use the fourier module",
        )),
    }
}

/// The defect through `M` at the default tolerance.
pub fn defect(u: &UnitaryMatrix) -> Result<usize> {
    Ok(defect_via_m(u, RankPolicy::default())?.defect)
}

/// Dimension of the span of the `2N` phasing tangents `i diag(e_k) U` and
/// `U i diag(e_l)`; at most `2N - 1`.
pub fn spanning_dimension(u: &UnitaryMatrix) -> usize {
    numerical_rank(&phasing_tangents(u), RankPolicy::default()).rank
}

/// Number of entries with modulus at most `1e-12`.
pub fn zero_count(u: &UnitaryMatrix) -> usize {
    u.as_slice().iter().filter(|z| z.norm() <= ZERO_ENTRY_TOL).count()
}

/// `d(U) + (2N-1) - #zeros - spanning_dimension`.
pub fn bound_b(u: &UnitaryMatrix) -> Result<i64> {
    Ok(defect_via_m(u, RankPolicy::default())?.bound_b)
}
