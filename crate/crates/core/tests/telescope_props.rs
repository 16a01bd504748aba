mod common;

use proptest::prelude::*;

use common::rng;
use std::f64::consts::{PI, TAU};
use uvqc::circuit::random::{random_circuit, random_clifford_circuit, random_product_map};

use uvqc::circuit::{swap_test_circuit, Circuit, Gate};
use uvqc::simulator::{expected_value, run, run_from_zero, spectral_report, StateVector};
use uvqc::telescope::{ancilla_zero_probability, initial_hamiltonian, TelescopeObjective};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_prefix_is_certified(seed: u64, n in 1usize..=5, len in 0usize..20, t in 0usize..=3) {
        let mut r = rng(seed);
        let c = random_circuit(&mut r, n, len, t);
        let v = random_product_map(&mut r, n);
        let mut obj = TelescopeObjective::new(c, Some(v)).unwrap();
        loop {
            let cert = obj.certify().unwrap();
            prop_assert!(cert.spectrum_is_hamming(n, 1e-8));
            prop_assert!((cert.gap - 1.0).abs() <= 1e-8);
            prop_assert!(cert.circuit_energy.abs() <= 1e-9);
            if obj.is_complete() {
                break;
            }
            obj.extend().unwrap();
        }
    }

    #[test]
    fn clifford_prefixes_keep_n_plus_one_terms(seed: u64, n in 1usize..=10, len in 0usize..40) {
        let mut r = rng(seed);
        let c = random_clifford_circuit(&mut r, n, len);
        let initial = initial_hamiltonian(n, None).unwrap().cardinality();
        prop_assert_eq!(initial, n + 1);
        let mut obj = TelescopeObjective::new(c, None).unwrap();
        while !obj.is_complete() {
            obj.extend().unwrap();
            prop_assert_eq!(obj.cardinality(), initial);
        }
    }

    #[test]
    fn circuit_output_has_zero_energy(seed: u64, n in 1usize..=7, len in 0usize..30) {
        let mut r = rng(seed);
        let c = random_circuit(&mut r, n, len, 2);
        let obj = TelescopeObjective::build(c.clone(), None, 100_000).unwrap();
        let out = run(&c, &StateVector::zero(n).unwrap()).unwrap();
        prop_assert!(expected_value(&out, obj.h()).unwrap().abs() <= 1e-9);
    }

    #[test]
    fn swap_test_minimum(t1 in 0.0..PI, p1 in 0.0..TAU, t2 in 0.0..PI, p2 in 0.0..TAU) {
        // Input |0>|ρ>|τ> prepared by single-qubit rotations.
        let v = Circuit::from_gates(
            3,
            [Gate::ry(1, t1), Gate::rz(1, p1), Gate::ry(2, t2), Gate::rz(2, p2)],
        )
        .unwrap();
        let single = |t: f64, p: f64| {
            run_from_zero(&Circuit::from_gates(1, [Gate::ry(0, t), Gate::rz(0, p)]).unwrap())
                .unwrap()
        };
        let inner = single(t1, p1).inner(&single(t2, p2)).unwrap();
        let obj = TelescopeObjective::build(swap_test_circuit(1).unwrap(), Some(v), 100_000).unwrap();
        prop_assert!(obj.certify().unwrap().passed());
        let ground = spectral_report(obj.h()).unwrap().ground_vector;
        let want = 0.5 + 0.5 * inner.norm_sqr();
        prop_assert!((ancilla_zero_probability(&ground) - want).abs() <= 1e-9);
    }
}
