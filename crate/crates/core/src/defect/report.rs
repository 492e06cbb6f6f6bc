use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::RankResult;

/// Entries with modulus at or below this count as zero in `b(U)`.
pub const ZERO_ENTRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "M_rank")]
    MRank,
    #[serde(rename = "W_nullspace")]
    WNullspace,
    #[serde(rename = "B_span")]
    BSpan,
    #[serde(rename = "Dg_nullspace")]
    DgNullspace,
    #[serde(rename = "closed_form")]
    ClosedForm,
}

impl Method {
    /// The four numeric characterizations.
    pub const NUMERIC: [Method; 4] = [Method::MRank, Method::WNullspace, Method::BSpan, Method::DgNullspace];

    pub fn name(self) -> &'static str {
        match self {
            Method::MRank => "M_rank",
            Method::WNullspace => "W_nullspace",
            Method::BSpan => "B_span",
            Method::DgNullspace => "Dg_nullspace",
            Method::ClosedForm => "closed_form",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    /// Accepts the short CLI names `M`, `W`, `B`, `Dg` as well as the full ones.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "M" | "M_rank" => Method::MRank,
            "W" | "W_nullspace" => Method::WNullspace,
            "B" | "B_span" => Method::BSpan,
            "Dg" | "Dg_nullspace" => Method::DgNullspace,
            "closed_form" => Method::ClosedForm,
            _ => return Err(Error::invalid(format!("unknown defect method {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DefectReport {
    pub n: usize,
    pub defect: usize,
    pub method: Method,
    /// Rank decision of the matrix the method reduces to.
    pub rank_result: RankResult,
    pub isolated: bool,
    pub spanning_dim: usize,
    pub zero_count: usize,
    /// Can be negative only for numerically inconsistent inputs.
    pub bound_b: i64,
    /// Defect obtained if the rank decision flipped across the gap; set
    /// only when the gap is too narrow to trust.
    pub alternative_defect: Option<usize>,
}

impl DefectReport {
    pub fn uncertain(&self) -> bool {
        self.alternative_defect.is_some()
    }

    pub fn to_json(&self) -> ReportJson {
        let mut candidates = None;
        if let Some(alt) = self.alternative_defect {
            let mut c = [self.defect, alt];
            c.sort_unstable();
            candidates = Some(c);
        }
        ReportJson {
            n: self.n,
            defect: self.defect,
            method: self.method,
            rank: self.rank_result.rank,
            gap_ratio: self
                .rank_result
                .gap_ratio
                .is_finite()
                .then_some(self.rank_result.gap_ratio),
            isolated: self.isolated,
            spanning_dim: self.spanning_dim,
            zero_count: self.zero_count,
            bound_b: self.bound_b,
            uncertain: self.uncertain(),
            candidate_defects: candidates,
        }
    }
}

/// Wire form of a [`DefectReport`]. An infinite gap ratio is written as `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub defect: usize,
    pub method: Method,
    pub rank: usize,
    pub gap_ratio: Option<f64>,
    pub isolated: bool,
    pub spanning_dim: usize,
    pub zero_count: usize,
    pub bound_b: i64,
    pub uncertain: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate_defects: Option<[usize; 2]>,
}

impl fmt::Display for DefectReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "method {:<13} N {:<3} defect {:<4} rank {:<5} gap {:<10} isolated {:<5} span {:<3} zeros {:<3} b {}",
            self.method.name(),
            self.n,
            self.defect,
            self.rank_result.rank,
            if self.rank_result.gap_ratio.is_finite() {
                format!("{:.2e}", self.rank_result.gap_ratio)
            } else {
                "inf".to_string()
            },
            self.isolated,
            self.spanning_dim,
            self.zero_count,
            self.bound_b
        )?;
        if let Some(alt) = self.alternative_defect {
            write!(f, " UNCERTAIN (alternative defect {alt})")?;
        }
        Ok(())
    }
}
