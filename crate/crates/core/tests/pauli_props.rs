mod common;

use proptest::prelude::*;

use common::{random_sum, rng, sorted};
use uvqc::circuit::random::{random_circuit, random_clifford_circuit};
use uvqc::linalg::{eigh, max_abs_diff};
use uvqc::pauli::{
    conjugate_circuit, conjugate_clifford, conjugate_unitary, mul_words, PauliSum, PauliWord, Phase,
};

fn word(n: usize, x: u64, z: u64) -> PauliWord {
    let mask = (1u64 << n) - 1;
    PauliWord::from_masks(n, x & mask, z & mask).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_phases_close(n in 1usize..=8, xa: u64, za: u64, xb: u64, zb: u64) {
        let (a, b) = (word(n, xa, za), word(n, xb, zb));
        let (ab, p) = mul_words(&a, &b).unwrap();
        prop_assert!([Phase::ONE, Phase::I, Phase::MINUS_ONE, Phase::MINUS_I].contains(&p));
        // a·(a·b) = b up to phase, since a² = I.
        let (back, _) = mul_words(&a, &ab).unwrap();
        prop_assert_eq!(back, b);
    }

    #[test]
    fn clifford_gates_keep_cardinality(seed: u64, n in 1usize..=6, terms in 1usize..40) {
        let mut r = rng(seed);
        let h = random_sum(&mut r, n, terms);
        for g in random_clifford_circuit(&mut r, n, 12).gates() {
            prop_assert_eq!(conjugate_clifford(&h, g).unwrap().cardinality(), h.cardinality());
        }
    }

    #[test]
    fn conjugation_matches_dense(seed: u64, n in 1usize..=4, terms in 1usize..12) {
        let mut r = rng(seed);
        let h = random_sum(&mut r, n, terms);
        let c = random_circuit(&mut r, n, 6, 3);
        for g in c.gates() {
            let got = conjugate_unitary(&h, g).unwrap().to_dense(n).unwrap();
            let u = uvqc::linalg::embed(&g.matrix(), g.qubits(), n);
            let want = &u * h.to_dense(n).unwrap() * u.adjoint();
            prop_assert!(max_abs_diff(&got, &want) <= 1e-10);
        }
    }

    #[test]
    fn pipelines_stay_hermitian(seed: u64, n in 1usize..=4) {
        let mut r = rng(seed);
        let a = random_sum(&mut r, n, 6);
        let b = random_sum(&mut r, n, 6);
        let c = random_circuit(&mut r, n, 8, 2);
        let out = conjugate_circuit(&a.add(&b).unwrap().square().unwrap(), &c).unwrap();
        let dense = out.to_dense(n).unwrap();
        prop_assert!(max_abs_diff(&dense, &dense.adjoint()) <= 1e-12 * (1.0 + out.max_abs_coefficient()));
        let round = PauliSum::parse(&out.to_text()).unwrap();
        prop_assert_eq!(round.cardinality(), out.cardinality());
    }

    #[test]
    fn conjugation_preserves_spectrum(seed: u64, n in 1usize..=4) {
        let mut r = rng(seed);
        let h = random_sum(&mut r, n, 10);
        let c = random_circuit(&mut r, n, 10, 3);
        let before = sorted(eigh(&h.to_dense(n).unwrap()).0);
        let after = sorted(eigh(&conjugate_circuit(&h, &c).unwrap().to_dense(n).unwrap()).0);
        for (x, y) in before.iter().zip(&after) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
    }
}
