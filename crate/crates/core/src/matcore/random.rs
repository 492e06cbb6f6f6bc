//! Seeded Haar-random unitary and orthogonal matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::matrix::ComplexMatrix;
use super::unitary::UnitaryMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-random `N x N` unitary: QR of a complex Gaussian matrix, with the
/// phases of `diag(R)` moved into `Q`.
pub fn random_unitary(n: usize, seed: u64) -> UnitaryMatrix {
    let mut rng = rng(seed);
    let g = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        Complex64::new(re, im)
    });
    haar_from_gaussian(g)
}

/// Haar-random real orthogonal matrix, returned with zero imaginary parts.
pub fn random_orthogonal(n: usize, seed: u64) -> UnitaryMatrix {
    let mut rng = rng(seed);
    let g = DMatrix::from_fn(n, n, |_, _| {
        let x: f64 = StandardNormal.sample(&mut rng);
        Complex64::new(x, 0.0)
    });
    haar_from_gaussian(g)
}

fn haar_from_gaussian(g: DMatrix<Complex64>) -> UnitaryMatrix {
    let n = g.nrows();
    assert!(n >= 1, "random matrices need N >= 1");
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let phase: Vec<Complex64> = (0..n)
        .map(|k| {
            let d = r[(k, k)];
            if d.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                d / d.norm()
            }
        })
        .collect();
    let m = ComplexMatrix::from_fn(n, n, |i, j| q[(i, j)] * phase[j]);
    UnitaryMatrix::with_tolerance(m, 1e-12).expect("QR factor of a Gaussian matrix is unitary")
}
