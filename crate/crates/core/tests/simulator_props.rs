mod common;

use proptest::prelude::*;

use common::{random_state, random_sum, rng};
use uvqc::circuit::random::random_circuit;
use uvqc::simulator::{dispersion, expected_value, spectral_report};
use uvqc::telescope::TelescopeObjective;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gates_preserve_norm(seed: u64, n in 1usize..=8) {
        let mut r = rng(seed);
        let mut s = random_state(&mut r, n);
        for g in random_circuit(&mut r, n, 20, 6).gates() {
            s.apply_gate(g).unwrap();
            prop_assert!((s.norm() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn expectation_matches_dense(seed: u64, n in 1usize..=8, terms in 1usize..20) {
        let mut r = rng(seed);
        let s = random_state(&mut r, n);
        let h = random_sum(&mut r, n, terms);
        let v = nalgebra::DVector::from_column_slice(s.amplitudes());
        let dense = (v.adjoint() * h.to_dense(n).unwrap() * &v)[(0, 0)].re;
        prop_assert!((expected_value(&s, &h).unwrap() - dense).abs() <= 1e-9);
    }

    #[test]
    fn dispersion_vanishes_exactly_on_eigenstates(seed: u64, n in 1usize..=4) {
        let mut r = rng(seed);
        let h = random_sum(&mut r, n, 8);
        let rep = spectral_report(&h).unwrap();
        let ground = rep.ground_vector;
        prop_assert!(dispersion(&ground, &h).unwrap().abs() <= 1e-9);

        let s = random_state(&mut r, n);
        let d = dispersion(&s, &h).unwrap();
        prop_assert!(d >= -1e-12);
        // Zero dispersion only if H|s> is parallel to |s>.
        let hs = uvqc::simulator::apply_sum(&s, &h).unwrap();
        let e = expected_value(&s, &h).unwrap();
        let resid: f64 = hs
            .iter()
            .zip(s.amplitudes())
            .map(|(a, b)| (a - b * e).norm_sqr())
            .sum();
        prop_assert!((d - resid).abs() <= 1e-9);
    }

    #[test]
    fn telescope_spectra_are_integers(seed: u64, n in 1usize..=5, len in 0usize..25) {
        let mut r = rng(seed);
        let c = random_circuit(&mut r, n, len, 3);
        let t = TelescopeObjective::build(c, None, 100_000).unwrap();
        for e in spectral_report(t.h()).unwrap().eigenvalues {
            prop_assert!((e - e.round()).abs() <= 1e-8 && e > -1e-8 && e < n as f64 + 1e-8);
        }
    }
}
