use unitary_defect::defect::*;
use unitary_defect::fourier::{defect_fourier_gcd, fourier_matrix};
use unitary_defect::matcore::{random_orthogonal, random_unitary, RankPolicy};

const TABLE: [usize; 32] = [
    0, 0, 0, 1, 0, 4, 0, 5, 4, 8, 0, 17, 0, 12, 16, 17, 0, 28, 0, 33, 24, 20, 0, 53, 16, 24, 28, 49, 0, 76, 0, 49,
];

fn all_methods(u: &unitary_defect::matcore::UnitaryMatrix) -> Vec<usize> {
    Method::NUMERIC
        .iter()
        .map(|&m| {
            let r = defect_by(u, m, RankPolicy::default()).unwrap();
            assert!(!r.uncertain(), "{m} uncertain on N = {}: {r}", u.size());
            r.defect
        })
        .collect()
}

#[test]
fn fourier_methods_agree_with_table() {
    for n in 1..=16 {
        let f = fourier_matrix(n).unwrap();
        let ds = all_methods(&f);
        assert!(ds.iter().all(|&d| d == TABLE[n - 1]), "N = {n}: {ds:?}");
    }
}

#[test]
fn random_unitaries_agree_and_are_generic() {
    for seed in 0..20 {
        let n = 2 + (seed as usize % 6);
        let u = random_unitary(n, seed);
        let ds = all_methods(&u);
        assert!(ds.iter().all(|&d| d == 0), "seed {seed}: {ds:?}");
    }
}

#[test]
fn numeric_matches_closed_form_up_to_32() {
    for n in 17..=32 {
        let r = defect_via_m(&fourier_matrix(n).unwrap(), RankPolicy::default()).unwrap();
        assert_eq!(r.defect as u64, defect_fourier_gcd(n as u64).unwrap());
        assert!(r.rank_result.gap_ratio >= 1e3);
    }
}

#[test]
fn orthogonal_bound_holds() {
    for n in 3..=8 {
        for seed in 0..5 {
            let q = random_orthogonal(n, seed);
            let ds = all_methods(&q);
            assert!(ds.iter().all(|&d| d == ds[0]));
            assert!(ds[0] >= (n - 1) * (n - 2) / 2, "N = {n}: {ds:?}");
        }
    }
}
