//! Parameter cycle matrices: the complex matrices `P` for which `R = P F_N`
//! runs over all real solutions of the defect system of `F_N`.
//!
//! Layout for size `N`, columns 1-based:
//! * column 1 holds `N` real parameters;
//! * for each step `s` (`1..=(N-1)/2` for odd `N`, `1..=N/2-1` for even `N`)
//!   column `s+1` is constant on each cycle `k, k+s, k+2s, ...` of rows mod
//!   `N`, one complex parameter per cycle, and column `N-s+1` holds the
//!   conjugates;
//! * for even `N`, column `N/2+1` holds `N/2` real parameters repeated with
//!   period `N/2`.
//!
//! The canonical real parameter vector lists the first column top to bottom,
//! then the step blocks by increasing step with cycles in order as
//! `(re, im)` pairs, then the central column.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::fourier_matrix;
use crate::matcore::{gcd_lcm, mod1, random::rng, ComplexMatrix, RealMatrix};

/// Entries of `P F_N` with a larger imaginary part are a broken invariant.
pub const REALITY_TOL: f64 = 1e-12;

/// Steps carrying a conjugate column pair.
pub fn pcm_steps(n: usize) -> std::ops::RangeInclusive<usize> {
    if n % 2 == 1 {
        1..=(n - 1) / 2
    } else {
        1..=(n / 2).saturating_sub(1)
    }
}

/// The row cycles of step `s` in size `n`, 1-based, cycle `k-1` starting at
/// row `k`. There are `gcd(n, s)` cycles of length `lcm(n, s)/s`.
pub fn cycles(n: usize, s: usize) -> Vec<Vec<usize>> {
    let (g, l) = gcd_lcm(n as u64, s as u64).expect("n and s are positive");
    let len = (l / s as u64) as usize;
    (1..=g as usize)
        .map(|k| {
            let cyc: Vec<usize> = (0..len).map(|t| mod1((k + t * s) as i64, n)).collect();
            debug_assert_eq!(cyc[0], k);
            debug_assert_eq!(mod1((k + len * s) as i64, n), k, "cycle closes after lcm/s steps");
            cyc
        })
        .collect()
}

/// `N + 2 sum_s gcd(N, s) (+ N/2 for even N)`.
pub fn pcm_parameter_count(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let steps: usize = pcm_steps(n)
        .map(|s| gcd_lcm(n as u64, s as u64).unwrap().0 as usize)
        .sum();
    n + 2 * steps + if n % 2 == 0 { n / 2 } else { 0 }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepBlock {
    /// Column index (1-based) of the block, `step + 1`.
    pub j: usize,
    /// One complex parameter per cycle, as `[re, im]`.
    pub cycles: Vec<[f64; 2]>,
}

/// JSON form of a parameter cycle matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcmParams {
    #[serde(rename = "N")]
    pub n: usize,
    pub first_col: Vec<f64>,
    pub steps: Vec<StepBlock>,
    /// Empty for odd `N`.
    pub central: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParameterCycleMatrix {
    params: PcmParams,
    materialized: ComplexMatrix,
}

impl ParameterCycleMatrix {
    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn params(&self) -> &PcmParams {
        &self.params
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.materialized
    }

    /// The canonical real parameter vector.
    pub fn to_vector(&self) -> Vec<f64> {
        let p = &self.params;
        let mut v = p.first_col.clone();
        for b in &p.steps {
            v.extend(b.cycles.iter().flatten());
        }
        v.extend(&p.central);
        v
    }

    /// Checks every structural rule against the materialized matrix.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        let p = &self.materialized;
        let fail = |what: String| Err(Error::Internal(format!("PCM of size {n}: {what}")));
        if self.to_vector().len() != pcm_parameter_count(n) {
            return fail("parameter count differs from the cycle structure".into());
        }
        if (0..n).any(|r| p[(r, 0)].im != 0.0) {
            return fail("first column is not real".into());
        }
        for s in pcm_steps(n) {
            let (c, mirror) = (s, n - s);
            for cyc in cycles(n, s) {
                let v = p[(cyc[0] - 1, c)];
                if cyc.iter().any(|&r| p[(r - 1, c)] != v) {
                    return fail(format!("column {} is not constant on a cycle", c + 1));
                }
            }
            if (0..n).any(|r| p[(r, mirror)] != p[(r, c)].conj()) {
                return fail(format!(
                    "column {} is not the conjugate of column {}",
                    mirror + 1,
                    c + 1
                ));
            }
        }
        if n % 2 == 0 {
            let c = n / 2;
            if (0..n).any(|r| p[(r, c)].im != 0.0 || p[(r, c)] != p[((r + n / 2) % n, c)]) {
                return fail("central column is not real with period N/2".into());
            }
        }
        Ok(())
    }
}

fn expect_len(what: &str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::invalid(format!(
            "{what}: expected {expected} values, got {found}"
        )));
    }
    Ok(())
}

/// Builds and materializes a PCM; block sizes must match `N`'s cycle structure.
pub fn pcm_from_parameters(params: PcmParams) -> Result<ParameterCycleMatrix> {
    let n = params.n;
    if n == 0 {
        return Err(Error::invalid("PCM size must be at least 1"));
    }
    expect_len("first column", n, params.first_col.len())?;
    let steps: Vec<usize> = pcm_steps(n).collect();
    expect_len("step blocks", steps.len(), params.steps.len())?;
    expect_len(
        "central column",
        if n % 2 == 0 { n / 2 } else { 0 },
        params.central.len(),
    )?;

    let mut p = ComplexMatrix::zeros(n, n);
    for (r, &x) in params.first_col.iter().enumerate() {
        p[(r, 0)] = Complex64::new(x, 0.0);
    }
    for (&s, block) in steps.iter().zip(&params.steps) {
        if block.j != s + 1 {
            return Err(Error::invalid(format!(
                "step blocks must be listed for columns 2, 3, ...; expected j = {}, got {}",
                s + 1,
                block.j
            )));
        }
        let cyc = cycles(n, s);
        expect_len(&format!("cycles of column {}", block.j), cyc.len(), block.cycles.len())?;
        for (rows, &[re, im]) in cyc.iter().zip(&block.cycles) {
            let z = Complex64::new(re, im);
            for &r in rows {
                p[(r - 1, s)] = z;
                p[(r - 1, n - s)] = z.conj();
            }
        }
    }
    for (k, &x) in params.central.iter().enumerate() {
        p[(k, n / 2)] = Complex64::new(x, 0.0);
        p[(k + n / 2, n / 2)] = Complex64::new(x, 0.0);
    }
    let pcm = ParameterCycleMatrix {
        params,
        materialized: p,
    };
    pcm.check_invariants()?;
    Ok(pcm)
}

/// Builds a PCM from its canonical real parameter vector.
pub fn pcm_from_vector(n: usize, v: &[f64]) -> Result<ParameterCycleMatrix> {
    expect_len("PCM parameter vector", pcm_parameter_count(n), v.len())?;
    let mut it = v.iter().copied();
    let first_col = it.by_ref().take(n).collect();
    let steps = pcm_steps(n)
        .map(|s| StepBlock {
            j: s + 1,
            cycles: (0..cycles(n, s).len())
                .map(|_| [it.next().unwrap(), it.next().unwrap()])
                .collect(),
        })
        .collect();
    let central = it.collect();
    pcm_from_parameters(PcmParams {
        n,
        first_col,
        steps,
        central,
    })
}

/// Parameters drawn uniformly from `[-1, 1]`.
pub fn random_pcm(n: usize, seed: u64) -> Result<ParameterCycleMatrix> {
    let mut rng = rng(seed);
    let v: Vec<f64> = (0..pcm_parameter_count(n)).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    pcm_from_vector(n, &v)
}

/// `R = P F_N`, checked to be real.
pub fn pcm_to_solution(p: &ParameterCycleMatrix) -> Result<RealMatrix> {
    let f = fourier_matrix(p.n())?;
    let r = p.matrix().matmul(&f)?;
    let worst = r.im().max_abs();
    if worst > REALITY_TOL {
        return Err(Error::Internal(format!(
            "P F has imaginary part {worst:.3e}; the PCM invariants are broken"
        )));
    }
    Ok(r.re())
}

/// The PCMs of the canonical unit parameter vectors.
pub fn pcm_basis(n: usize) -> Result<Vec<ParameterCycleMatrix>> {
    let count = pcm_parameter_count(n);
    (0..count)
        .map(|k| {
            let mut v = vec![0.0; count];
            v[k] = 1.0;
            pcm_from_vector(n, &v)
        })
        .collect()
}
