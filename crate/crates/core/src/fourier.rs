//! Fourier matrices and the closed forms for their defect.

use num_complex::Complex64;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::defect::defect_via_m;
use crate::error::{Error, Result};
use crate::matcore::{factorize, gcd, is_prime, ComplexMatrix, RankPolicy, UnitaryMatrix};

/// Largest size the numeric engine is run on by [`defect_table`].
pub const NUMERIC_MAX_N: usize = 64;

/// `[F_N]_{ij} = e^{2 pi i (i-1)(j-1)/N} / sqrt(N)`.
pub fn fourier_matrix(n: usize) -> Result<UnitaryMatrix> {
    if n == 0 {
        return Err(Error::invalid("Fourier matrix needs N >= 1"));
    }
    let s = 1.0 / (n as f64).sqrt();
    // reduce the exponent mod N first so large products keep full precision
    let m = ComplexMatrix::from_fn(n, n, |i, j| {
        let e = (i * j) % n;
        Complex64::from_polar(s, std::f64::consts::TAU * e as f64 / n as f64)
    });
    UnitaryMatrix::with_tolerance(m, 1e-12)
}

fn positive(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::invalid("the Fourier defect is defined for N >= 1"))
    } else {
        Ok(())
    }
}

/// `1 - N + 2 sum_{l=1}^{(N-1)/2} gcd(N,l)` for odd `N`,
/// `1 - N/2 + 2 sum_{l=1}^{N/2-1} gcd(N,l)` for even `N`.
pub fn defect_fourier_gcd(n: u64) -> Result<u64> {
    positive(n)?;
    let (base, upper) = if n % 2 == 1 {
        (1 - n as i128, (n - 1) / 2)
    } else {
        (1 - (n / 2) as i128, (n / 2).saturating_sub(1))
    };
    let s: i128 = (1..=upper).map(|l| gcd(n, l) as i128).sum();
    Ok((base + 2 * s) as u64)
}

/// `sum_{l=1}^{N-1} (gcd(N,l) - 1)`.
pub fn defect_fourier_sum(n: u64) -> Result<u64> {
    positive(n)?;
    Ok((1..n).map(|l| gcd(n, l) - 1).sum())
}

/// `N (prod_j (1 + k_j - k_j/p_j) - 2) + 1` over the prime factorization,
/// in exact rationals.
pub fn defect_fourier_factorized(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    let prod = f.pairs().fold(Ratio::from_integer(1i128), |acc, (p, k)| {
        let (p, k) = (p as i128, k as i128);
        acc * (Ratio::from_integer(1 + k) - Ratio::new(k, p))
    });
    let d = Ratio::from_integer(n as i128) * (prod - 2) + 1;
    if !d.is_integer() || *d.numer() < 0 {
        return Err(Error::Internal(format!(
            "factorized defect formula gave {d} for N = {n}"
        )));
    }
    Ok(d.to_integer() as u64)
}

/// Sizes with a dedicated closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecialCase {
    /// `N = pq`, distinct primes: `2(p-1)(q-1)`.
    Pq { p: u64, q: u64 },
    /// `N = pqr`, distinct primes: `2[3pqr - 2(pq+pr+qr) + (p+q+r)]`.
    Pqr { p: u64, q: u64, r: u64 },
    /// `N = p^k`: `p^{k-1}[(p-1)k - p] + 1`.
    PPowK { p: u64, k: u32 },
}

impl SpecialCase {
    pub fn size(self) -> u64 {
        match self {
            SpecialCase::Pq { p, q } => p * q,
            SpecialCase::Pqr { p, q, r } => p * q * r,
            SpecialCase::PPowK { p, k } => p.pow(k),
        }
    }

    fn validate(self) -> Result<()> {
        let primes: Vec<u64> = match self {
            SpecialCase::Pq { p, q } => vec![p, q],
            SpecialCase::Pqr { p, q, r } => vec![p, q, r],
            SpecialCase::PPowK { p, k } => {
                if k == 0 {
                    return Err(Error::invalid("p^k needs k >= 1"));
                }
                vec![p]
            }
        };
        if let Some(&bad) = primes.iter().find(|&&x| !is_prime(x)) {
            return Err(Error::invalid(format!("{bad} is not prime")));
        }
        let mut sorted = primes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != primes.len() {
            return Err(Error::invalid("the primes must be distinct"));
        }
        Ok(())
    }
}

pub fn defect_fourier_special(case: SpecialCase) -> Result<u64> {
    case.validate()?;
    let d: i128 = match case {
        SpecialCase::Pq { p, q } => {
            let (p, q) = (p as i128, q as i128);
            2 * (p - 1) * (q - 1)
        }
        SpecialCase::Pqr { p, q, r } => {
            let (p, q, r) = (p as i128, q as i128, r as i128);
            2 * (3 * p * q * r - 2 * (p * q + p * r + q * r) + (p + q + r))
        }
        SpecialCase::PPowK { p, k } => {
            let p = p as i128;
            p.pow(k - 1) * ((p - 1) * k as i128 - p) + 1
        }
    };
    Ok(d as u64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub closed_form: u64,
    pub numeric: Option<u64>,
    pub agree: Option<bool>,
    /// The numeric rank was decided across a narrow gap.
    pub uncertain: bool,
}

/// Defects of `F_1 .. F_{n_max}` from the closed form and, when `numeric`
/// is set, from the rank of `M` (requires `n_max <= 64`).
pub fn defect_table(n_max: usize, numeric: bool) -> Result<Vec<TableRow>> {
    if numeric && n_max > NUMERIC_MAX_N {
        return Err(Error::invalid(format!(
            "the numeric table is limited to N <= {NUMERIC_MAX_N}, got {n_max}"
        )));
    }
    (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let closed_form = defect_fourier_gcd(n as u64)?;
            let mut row = TableRow {
                n,
                closed_form,
                numeric: None,
                agree: None,
                uncertain: false,
            };
            if numeric {
                let r = defect_via_m(&fourier_matrix(n)?, RankPolicy::default())?;
                row.numeric = Some(r.defect as u64);
                row.agree = Some(r.defect as u64 == closed_form);
                row.uncertain = r.uncertain();
            }
            Ok(row)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn small_fourier_matrices() {
        let f1 = fourier_matrix(1).unwrap();
        assert_eq!(f1[(0, 0)], Complex64::new(1.0, 0.0));
        let f2 = fourier_matrix(2).unwrap();
        assert!((f2[(1, 1)] - Complex64::new(-FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        let f4 = fourier_matrix(4).unwrap();
        assert!((f4[(2, 2)] - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!(fourier_matrix(0).is_err());
        assert!(fourier_matrix(64).unwrap().unitarity_residual() <= 1e-12);
    }

    #[test]
    fn formula_examples() {
        assert_eq!(defect_fourier_gcd(6).unwrap(), 4);
        assert_eq!(defect_fourier_gcd(7).unwrap(), 0);
        assert_eq!(defect_fourier_gcd(30).unwrap(), 76);
        assert_eq!(defect_fourier_sum(12).unwrap(), 17);
        assert_eq!(defect_fourier_sum(32).unwrap(), 49);
        assert_eq!(defect_fourier_factorized(12).unwrap(), 17);
        assert_eq!(defect_fourier_factorized(64).unwrap(), 129);
        assert_eq!(defect_fourier_gcd(1).unwrap(), 0);
        assert_eq!(defect_fourier_factorized(1).unwrap(), 0);
        assert!(defect_fourier_gcd(0).is_err());
    }

    #[test]
    fn special_cases() {
        use SpecialCase::*;
        assert_eq!(defect_fourier_special(Pq { p: 2, q: 3 }).unwrap(), 4);
        assert_eq!(defect_fourier_special(Pq { p: 3, q: 5 }).unwrap(), 16);
        assert_eq!(defect_fourier_special(Pqr { p: 2, q: 3, r: 5 }).unwrap(), 76);
        assert_eq!(defect_fourier_special(PPowK { p: 3, k: 2 }).unwrap(), 4);
        assert_eq!(defect_fourier_special(PPowK { p: 2, k: 3 }).unwrap(), 5);
        assert_eq!(defect_fourier_special(PPowK { p: 2, k: 5 }).unwrap(), 49);
        assert!(defect_fourier_special(Pq { p: 3, q: 3 }).is_err());
        assert!(defect_fourier_special(Pq { p: 4, q: 3 }).is_err());
        assert!(defect_fourier_special(PPowK { p: 2, k: 0 }).is_err());
    }

    #[test]
    fn numeric_guard() {
        assert!(defect_table(65, true).is_err());
        assert_eq!(defect_table(100, false).unwrap()[63].closed_form, 129);
    }

    #[test]
    fn small_numeric_table_agrees() {
        let rows = defect_table(10, true).unwrap();
        assert!(rows.iter().all(|r| r.agree == Some(true) && !r.uncertain));
        assert_eq!(
            rows.iter().map(|r| r.n).collect::<Vec<_>>(),
            (1..=10).collect::<Vec<_>>()
        );
    }
}
