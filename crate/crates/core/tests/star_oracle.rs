//! The symbolic calculus against the oracle beyond the acceptance sweeps.

use dgstab::oracle::stable::DEFAULT_SEED;
use dgstab::star::StarParams;
use dgstab::verify::{canonical_composition_sweep, grstab_sweep, omega_normalize_sweep, Check};
use dgstab::{Execution, PrimeField};

fn grid() -> Vec<StarParams> {
    (2..=4)
        .flat_map(|n| (0..=2).map(move |d| StarParams::new(n, d).unwrap()))
        .collect()
}

fn assert_clean(c: &Check) {
    assert!(c.checked > 0);
    assert!(c.passed(), "{} failures, first: {:?}", c.failures.len(), c.failures.first());
}

#[test]
fn grstab_hom_dim_matches_stable_hom() {
    for p in grid() {
        assert_clean(&grstab_sweep(PrimeField::default(), p, Execution::Parallel).unwrap());
    }
}

#[test]
fn canonical_composition_matches_the_oracle() {
    for p in grid() {
        assert_clean(&canonical_composition_sweep(PrimeField::default(), p).unwrap());
    }
}

#[test]
fn omega_and_normalize_match_the_oracle() {
    for p in grid() {
        assert_clean(&omega_normalize_sweep(PrimeField::default(), p, DEFAULT_SEED).unwrap());
    }
}

#[test]
fn small_characteristic_agrees() {
    for prime in [2, 3] {
        let f = PrimeField::new(prime).unwrap();
        let p = StarParams::new(3, 1).unwrap();
        assert_clean(&grstab_sweep(f, p, Execution::Sequential).unwrap());
        assert_clean(&omega_normalize_sweep(f, p, DEFAULT_SEED).unwrap());
    }
}
