//! The displayed families for `F_8` and `F_9`.

use num_complex::Complex64;

use crate::matcore::{ComplexMatrix, RealMatrix};

/// Phase matrix of the `F_8` family. Rows 1 and 5 and column 1 are zero;
/// rows 2..4 of the left half repeat in both halves and both row blocks:
/// `[0 a b c]`, `[0 d 0 d]`, `[0 e b c-a+e]`.
pub fn explicit_r8(a: f64, b: f64, c: f64, d: f64, e: f64) -> RealMatrix {
    let block = [[0.0; 4], [0.0, a, b, c], [0.0, d, 0.0, d], [0.0, e, b, c - a + e]];
    RealMatrix::from_fn(8, 8, |i, j| block[i % 4][j % 4])
}

/// Phase matrix of the `F_9` family: the 3x3 block `[0 0 0; 0 a b; 0 c d]`
/// tiled three times in each direction.
pub fn explicit_r9(a: f64, b: f64, c: f64, d: f64) -> RealMatrix {
    let block = [[0.0; 3], [0.0, a, b], [0.0, c, d]];
    RealMatrix::from_fn(9, 9, |i, j| block[i % 3][j % 3])
}

/// Parameter cycle matrix of the `F_8` family, rows repeating with period 4:
/// `0`, `[-(2a+c) 0 a+ib 0 c 0 a-ib 0]`, `[-d 0 0 0 d 0 0 0]`,
/// `[-(2a+e) 0 a+ib 0 e 0 a-ib 0]`.
pub fn explicit_p8(a: f64, b: f64, c: f64, d: f64, e: f64) -> ComplexMatrix {
    let z = |re: f64, im: f64| Complex64::new(re, im);
    let zero = z(0.0, 0.0);
    let rows = [
        [zero; 8],
        [
            z(-(2.0 * a + c), 0.0),
            zero,
            z(a, b),
            zero,
            z(c, 0.0),
            zero,
            z(a, -b),
            zero,
        ],
        [z(-d, 0.0), zero, zero, zero, z(d, 0.0), zero, zero, zero],
        [
            z(-(2.0 * a + e), 0.0),
            zero,
            z(a, b),
            zero,
            z(e, 0.0),
            zero,
            z(a, -b),
            zero,
        ],
    ];
    ComplexMatrix::from_fn(8, 8, |i, j| rows[i % 4][j])
}

/// Parameter cycle matrix of the `F_9` family, rows repeating with period 3:
/// `0`, `[-2a 0 0 a+ib 0 0 a-ib 0 0]`, `[-2c 0 0 c+id 0 0 c-id 0 0]`.
pub fn explicit_p9(a: f64, b: f64, c: f64, d: f64) -> ComplexMatrix {
    let z = |re: f64, im: f64| Complex64::new(re, im);
    let row = |x: f64, y: f64| {
        let mut r = [z(0.0, 0.0); 9];
        r[0] = z(-2.0 * x, 0.0);
        r[3] = z(x, y);
        r[6] = z(x, -y);
        r
    };
    let rows = [[z(0.0, 0.0); 9], row(a, b), row(c, d)];
    ComplexMatrix::from_fn(9, 9, |i, j| rows[i % 3][j])
}

/// Parameters of [`explicit_p8`] whose product with `F_8` is
/// `explicit_r8(a, b, c, d, e)`. The two displayed forms use the same
/// letters for different coordinates of the same space; this is the linear
/// change between them.
pub fn p8_parameters_for_r8(a: f64, b: f64, c: f64, d: f64, e: f64) -> [f64; 5] {
    let s = std::f64::consts::SQRT_2;
    [-b / s, (c - a) / s, (b - a - c) / s, -s * d, (a + b - c) / s - s * e]
}

/// Parameters of [`explicit_p9`] whose product with `F_9` is
/// `explicit_r9(a, b, c, d)`.
pub fn p9_parameters_for_r9(a: f64, b: f64, c: f64, d: f64) -> [f64; 4] {
    let h = 3f64.sqrt() / 2.0;
    [-(a + b) / 2.0, h * (b - a), -(c + d) / 2.0, h * (d - c)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::fourier_matrix;

    #[test]
    fn r8_layout() {
        let r = explicit_r8(1.0, 0.0, 0.0, 0.0, 0.0);
        assert_eq!(r[(1, 1)], 1.0);
        assert_eq!(r[(1, 5)], 1.0);
        assert_eq!(r[(3, 3)], -1.0);
        assert!((0..8).all(|t| r[(0, t)] == 0.0 && r[(t, 0)] == 0.0));
    }

    #[test]
    fn r9_is_three_periodic() {
        let r = explicit_r9(0.3, -1.0, 2.0, 0.7);
        for i in 0..9 {
            for j in 0..9 {
                assert_eq!(r[(i, j)], r[(i % 3, j % 3)]);
            }
        }
    }

    #[test]
    fn reparametrized_products_match() {
        let (a, b, c, d, e) = (0.4, -1.3, 2.2, 0.9, -0.5);
        let q = p8_parameters_for_r8(a, b, c, d, e);
        let pf = explicit_p8(q[0], q[1], q[2], q[3], q[4])
            .matmul(&fourier_matrix(8).unwrap())
            .unwrap();
        assert!(pf.im().max_abs() < 1e-12);
        assert!(pf.re().max_abs_diff(&explicit_r8(a, b, c, d, e)).unwrap() < 1e-12);

        let q = p9_parameters_for_r9(a, b, c, d);
        let pf = explicit_p9(q[0], q[1], q[2], q[3])
            .matmul(&fourier_matrix(9).unwrap())
            .unwrap();
        assert!(pf.im().max_abs() < 1e-12);
        assert!(pf.re().max_abs_diff(&explicit_r9(a, b, c, d)).unwrap() < 1e-12);
    }
}
