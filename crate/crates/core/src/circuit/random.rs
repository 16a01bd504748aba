//! Seeded random circuit generators for fixtures and property tests.

use std::f64::consts::TAU;

use rand::seq::IndexedRandom;
use rand::Rng;

use super::{Circuit, Gate, GateKind};

fn distinct<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    rand::seq::index::sample(rng, n, k).into_vec()
}

fn make<R: Rng + ?Sized>(rng: &mut R, n: usize, kind: GateKind) -> Gate {
    let qubits = distinct(rng, n, kind.arity());
    let angle = kind.is_parameterized().then(|| rng.random_range(-TAU..TAU));
    Gate::new(kind, &qubits, angle).expect("generated gate is valid")
}

fn pick<R: Rng + ?Sized>(rng: &mut R, n: usize, kinds: &[GateKind]) -> Gate {
    let usable: Vec<GateKind> = kinds.iter().copied().filter(|k| k.arity() <= n).collect();
    let kind = *usable.choose(rng).expect("at least one usable kind");
    make(rng, n, kind)
}

const CLIFFORD: [GateKind; 9] = [
    GateKind::H,
    GateKind::S,
    GateKind::Sdg,
    GateKind::X,
    GateKind::Y,
    GateKind::Z,
    GateKind::CNOT,
    GateKind::CZ,
    GateKind::SWAP,
];

const NON_CLIFFORD: [GateKind; 6] = [
    GateKind::T,
    GateKind::Tdg,
    GateKind::RX,
    GateKind::RY,
    GateKind::RZ,
    GateKind::CRY,
];

const SELF_INVERSE: [GateKind; 11] = [
    GateKind::H,
    GateKind::X,
    GateKind::Y,
    GateKind::Z,
    GateKind::CNOT,
    GateKind::CZ,
    GateKind::SWAP,
    GateKind::CSWAP,
    GateKind::R,
    GateKind::RYZ,
    GateKind::RXY,
];

/// Uniformly mixed circuit of named Clifford gates.
pub fn random_clifford_circuit<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> Circuit {
    let gates: Vec<Gate> = (0..len).map(|_| pick(rng, n, &CLIFFORD)).collect();
    Circuit::from_gates(n, gates).expect("width respected")
}

/// Clifford circuit with exactly `min(non_clifford, len)` non-Clifford gates
/// at random positions.
pub fn random_circuit<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    len: usize,
    non_clifford: usize,
) -> Circuit {
    let k = non_clifford.min(len);
    let slots = distinct(rng, len.max(1), k);
    let gates: Vec<Gate> = (0..len)
        .map(|i| {
            if slots.contains(&i) {
                pick(rng, n, &NON_CLIFFORD)
            } else {
                pick(rng, n, &CLIFFORD)
            }
        })
        .collect();
    Circuit::from_gates(n, gates).expect("width respected")
}

/// Circuit built only from self-inverse kinds.
pub fn random_self_inverse_circuit<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> Circuit {
    let gates: Vec<Gate> = (0..len).map(|_| pick(rng, n, &SELF_INVERSE)).collect();
    Circuit::from_gates(n, gates).expect("width respected")
}

/// One `RY` then one `RZ` per qubit: prepares an arbitrary product state
/// from `|0...0>`.
pub fn random_product_map<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Circuit {
    let mut c = Circuit::new(n);
    for q in 0..n {
        c.push(Gate::ry(q, rng.random_range(0.0..std::f64::consts::PI)))
            .expect("width respected");
        c.push(Gate::rz(q, rng.random_range(0.0..TAU)))
            .expect("width respected");
    }
    c
}
