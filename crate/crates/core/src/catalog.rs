//! Named matrices: `s6`, `fourier:N`, `jn:N`, `ray4:t`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::fourier_matrix;
use crate::matcore::{ComplexMatrix, RealMatrix, UnitaryMatrix};

/// The 6x6 spectral matrix: `(1/sqrt 6) w^{E_ij}` with `w = e^{2 pi i/3}`.
pub fn spectral_matrix_s6() -> UnitaryMatrix {
    const E: [[u32; 6]; 6] = [
        [0, 0, 0, 0, 0, 0],
        [0, 0, 1, 1, 2, 2],
        [0, 1, 0, 2, 2, 1],
        [0, 1, 2, 0, 1, 2],
        [0, 2, 2, 1, 0, 1],
        [0, 2, 1, 2, 1, 0],
    ];
    let s = 1.0 / 6f64.sqrt();
    let m = ComplexMatrix::from_fn(6, 6, |i, j| {
        Complex64::from_polar(s, std::f64::consts::TAU * E[i][j] as f64 / 3.0)
    });
    UnitaryMatrix::with_tolerance(m, 1e-14).expect("S_6 is unitary")
}

/// `J_N` with every entry `1/N`.
pub fn flat_matrix(n: usize) -> Result<RealMatrix> {
    if n == 0 {
        return Err(Error::invalid("J_N needs N >= 1"));
    }
    Ok(RealMatrix::from_fn(n, n, |_, _| 1.0 / n as f64))
}

/// `J_4 + t D` on the ray of bistochastic matrices without unitary
/// preimages, `D = [9 -3 -3 -3; -3 1 1 1; ...] / 4`.
///
/// The ray is stated for `t` in `[-1/9, 0)`; the endpoint `-1/9`, where
/// entry (1,1) reaches zero, is accepted.
pub fn non_unistochastic_ray_point(t: f64) -> Result<RealMatrix> {
    if !(-1.0 / 9.0..0.0).contains(&t) {
        return Err(Error::invalid(format!("ray parameter t = {t} is outside [-1/9, 0)")));
    }
    Ok(RealMatrix::from_fn(4, 4, |i, j| {
        let d = match (i, j) {
            (0, 0) => 9.0,
            (0, _) | (_, 0) => -3.0,
            _ => 1.0,
        };
        0.25 + t * d / 4.0
    }))
}

/// Entrywise squared moduli, `B_ij = |U_ij|^2`.
pub fn moduli_map(u: &ComplexMatrix) -> RealMatrix {
    u.map(|z| z.norm_sqr())
}

/// Largest deviation of a row or column sum from 1.
pub fn bistochastic_deviation(b: &RealMatrix) -> f64 {
    let rows = (0..b.rows()).map(|i| b.row(i).iter().sum::<f64>());
    let cols = (0..b.cols()).map(|j| b.column(j).iter().sum::<f64>());
    rows.chain(cols).map(|s| (s - 1.0).abs()).fold(0.0, f64::max)
}

/// Resolves a catalog name. Unitary entries (`s6`, `fourier:N`) and
/// bistochastic ones (`jn:N`, `ray4:t`) are all returned as complex matrices;
/// callers that need unitarity check it themselves.
pub fn lookup(name: &str) -> Result<ComplexMatrix> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    let int_arg = || -> Result<usize> {
        let a = arg.ok_or_else(|| Error::invalid(format!("{head} needs a size, e.g. {head}:4")))?;
        a.parse()
            .map_err(|_| Error::invalid(format!("bad size {a:?} in {name:?}")))
    };
    match head {
        "s6" if arg.is_none() => Ok(spectral_matrix_s6().into_inner()),
        "fourier" => Ok(fourier_matrix(int_arg()?)?.into_inner()),
        "jn" => Ok(flat_matrix(int_arg()?)?.to_complex()),
        "ray4" => {
            let a = arg.ok_or_else(|| Error::invalid("ray4 needs a parameter, e.g. ray4:-0.05"))?;
            let t = parse_fraction(a).ok_or_else(|| Error::invalid(format!("bad ray parameter {a:?}")))?;
            Ok(non_unistochastic_ray_point(t)?.to_complex())
        }
        _ => Err(Error::invalid(format!("unknown catalog name {name:?}"))),
    }
}

/// A float or a fraction like `-1/9`.
fn parse_fraction(s: &str) -> Option<f64> {
    match s.split_once('/') {
        Some((a, b)) => Some(a.trim().parse::<f64>().ok()? / b.trim().parse::<f64>().ok()?),
        None => s.trim().parse().ok(),
    }
}

/// True for names [`lookup`] understands, without building the matrix.
pub fn is_catalog_name(name: &str) -> bool {
    let head = name.split_once(':').map_or(name, |(h, _)| h);
    name == "s6" || (matches!(head, "fourier" | "jn" | "ray4") && name.contains(':'))
}
