use unitary_defect::catalog::*;
use unitary_defect::defect::{defect_by, Method};
use unitary_defect::fourier::fourier_matrix;
use unitary_defect::matcore::{RankPolicy, UnitaryMatrix};

#[test]
fn s6_is_an_isolated_hadamard_matrix() {
    let s = spectral_matrix_s6();
    assert!(s.unitarity_residual() < 1e-14);
    for m in Method::NUMERIC {
        let r = defect_by(&s, m, RankPolicy::default()).unwrap();
        assert_eq!(r.defect, 0, "{m}");
        assert!(r.isolated && !r.uncertain(), "{m}");
    }
}

#[test]
fn fourier_moduli_are_flat() {
    for n in 1..=8 {
        let b = moduli_map(&fourier_matrix(n).unwrap());
        assert!(b.max_abs_diff(&flat_matrix(n).unwrap()).unwrap() < 1e-15);
    }
}

#[test]
fn ray_is_bistochastic_and_has_no_unitary_preimage_entry_check() {
    for t in [-1.0 / 9.0, -0.1, -0.05, -1e-6] {
        let b = non_unistochastic_ray_point(t).unwrap();
        assert!(bistochastic_deviation(&b) < 1e-15);
        assert!(b.as_slice().iter().all(|&x| x >= -1e-16));
        // a matrix of moduli is not itself unitary
        assert!(UnitaryMatrix::new(b.to_complex()).is_err());
    }
}

#[test]
fn lookup_matches_constructors() {
    assert_eq!(&lookup("s6").unwrap(), spectral_matrix_s6().matrix());
    assert_eq!(&lookup("fourier:5").unwrap(), fourier_matrix(5).unwrap().matrix());
    assert_eq!(lookup("jn:4").unwrap(), flat_matrix(4).unwrap().to_complex());
    assert_eq!(
        lookup("ray4:-0.05").unwrap(),
        non_unistochastic_ray_point(-0.05).unwrap().to_complex()
    );
    assert!(lookup("jn:0").is_err());
    assert!(lookup("s6:2").is_err());
}
