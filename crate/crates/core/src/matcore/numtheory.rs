//! Exact integer number theory on `u64`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest value [`factorize`] accepts.
pub const FACTORIZE_LIMIT: u64 = 1 << 32;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(gcd, lcm)` of two positive integers.
pub fn gcd_lcm(a: u64, b: u64) -> Result<(u64, u64)> {
    if a == 0 || b == 0 {
        return Err(Error::invalid("gcd_lcm needs positive integers"));
    }
    let g = gcd(a, b);
    Ok((g, a / g * b))
}

/// Prime factorization with primes in strictly decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub primes: Vec<u64>,
    pub exponents: Vec<u32>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.primes
            .iter()
            .zip(&self.exponents)
            .map(|(&p, &k)| p.pow(k))
            .product()
    }

    pub fn is_prime(&self) -> bool {
        self.exponents == [1]
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.iter().all(|&k| k == 1)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.primes.iter().copied().zip(self.exponents.iter().copied())
    }
}

/// Trial division; `n` must lie in `1..=2^32`. `factorize(1)` is empty.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::invalid("cannot factorize 0"));
    }
    if n > FACTORIZE_LIMIT {
        return Err(Error::invalid(format!("{n} exceeds the trial division limit 2^32")));
    }
    let mut primes = Vec::new();
    let mut exponents = Vec::new();
    let mut rest = n;
    let mut d = 2;
    while d * d <= rest {
        if rest % d == 0 {
            let mut k = 0;
            while rest % d == 0 {
                rest /= d;
                k += 1;
            }
            primes.push(d);
            exponents.push(k);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        primes.push(rest);
        exponents.push(1);
    }
    primes.reverse();
    exponents.reverse();
    Ok(Factorization { primes, exponents })
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).map(|f| f.is_prime()).unwrap_or(false)
}

pub fn euler_phi(m: u64) -> Result<u64> {
    let f = factorize(m)?;
    Ok(f.pairs().fold(m, |acc, (p, _)| acc / p * (p - 1)))
}

pub fn moebius(d: u64) -> Result<i32> {
    let f = factorize(d)?;
    Ok(if f.is_squarefree() {
        if f.primes.len() % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        0
    })
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::invalid("0 has no finite divisor list"));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_and_moebius_values() {
        assert_eq!(euler_phi(9).unwrap(), 6);
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(12).unwrap(), 0);
        assert_eq!(moebius(30).unwrap(), -1);
        assert_eq!(moebius(1).unwrap(), 1);
    }

    #[test]
    fn factorize_orders_primes_decreasing() {
        let f = factorize(12).unwrap();
        assert_eq!(f.primes, vec![3, 2]);
        assert_eq!(f.exponents, vec![1, 2]);
        assert_eq!(f.value(), 12);
        let big = factorize(4_294_967_291).unwrap(); // largest prime below 2^32
        assert!(big.is_prime());
        assert_eq!(factorize(FACTORIZE_LIMIT).unwrap().primes, vec![2]);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(gcd_lcm(0, 3).is_err());
        assert!(euler_phi(0).is_err());
        assert!(moebius(0).is_err());
        assert!(factorize(0).is_err());
        assert!(factorize(FACTORIZE_LIMIT + 1).is_err());
    }

    #[test]
    fn gcd_lcm_basic() {
        assert_eq!(gcd_lcm(12, 18).unwrap(), (6, 36));
        assert_eq!(gcd_lcm(7, 1).unwrap(), (1, 7));
    }

    #[test]
    fn phi_sums_over_divisors_to_n() {
        for n in 1..=1000u64 {
            let s: u64 = divisors(n).unwrap().into_iter().map(|d| euler_phi(d).unwrap()).sum();
            assert_eq!(s, n, "n = {n}");
        }
    }

    #[test]
    fn moebius_inversion_of_phi_over_m() {
        let psi = |m: u64| euler_phi(m).unwrap() as f64 / m as f64;
        let psi_le = |m: u64| divisors(m).unwrap().into_iter().map(|d| psi(m / d)).sum::<f64>();
        for n in 1..=500u64 {
            let back: f64 = divisors(n)
                .unwrap()
                .into_iter()
                .map(|d| psi_le(n / d) * moebius(d).unwrap() as f64)
                .sum();
            assert!((back - psi(n)).abs() < 1e-12, "n = {n}");
        }
    }
}
