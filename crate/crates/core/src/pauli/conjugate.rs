use num_complex::Complex64;
use rayon::prelude::*;

use super::sum::{PauliSum, HERMITIAN_TOL};
use super::word::{mul_words_unchecked, Letter, PauliWord};
use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::linalg::{kron, pauli_matrix, CMatrix};

/// Sums larger than this are mapped term-by-term on the rayon pool.
const PARALLEL_THRESHOLD: usize = 2048;

/// Image of a single letter sitting at position `pos` of a Clifford gate,
/// as letters over the gate's qubits plus a sign.
fn letter_image(kind: GateKind, pos: usize, letter: Letter) -> (Vec<Letter>, f64) {
    use Letter::*;
    let one = |l: Letter, s: f64| (vec![l], s);
    match kind {
        GateKind::I => one(letter, 1.0),
        GateKind::H => match letter {
            X => one(Z, 1.0),
            Y => one(Y, -1.0),
            Z => one(X, 1.0),
            I => one(I, 1.0),
        },
        GateKind::S => match letter {
            X => one(Y, 1.0),
            Y => one(X, -1.0),
            l => one(l, 1.0),
        },
        GateKind::Sdg => match letter {
            X => one(Y, -1.0),
            Y => one(X, 1.0),
            l => one(l, 1.0),
        },
        GateKind::X => match letter {
            Y | Z => one(letter, -1.0),
            l => one(l, 1.0),
        },
        GateKind::Y => match letter {
            X | Z => one(letter, -1.0),
            l => one(l, 1.0),
        },
        GateKind::Z => match letter {
            X | Y => one(letter, -1.0),
            l => one(l, 1.0),
        },
        GateKind::CNOT => match (pos, letter) {
            (0, X) => (vec![X, X], 1.0),
            (0, Y) => (vec![Y, X], 1.0),
            (0, Z) => (vec![Z, I], 1.0),
            (1, X) => (vec![I, X], 1.0),
            (1, Y) => (vec![Z, Y], 1.0),
            (1, Z) => (vec![Z, Z], 1.0),
            _ => (vec![I, I], 1.0),
        },
        GateKind::CZ => {
            let (own, other) = match letter {
                X => (X, Z),
                Y => (Y, Z),
                Z => (Z, I),
                I => (I, I),
            };
            if pos == 0 {
                (vec![own, other], 1.0)
            } else {
                (vec![other, own], 1.0)
            }
        }
        GateKind::SWAP => {
            if pos == 0 {
                (vec![I, letter], 1.0)
            } else {
                (vec![letter, I], 1.0)
            }
        }
        other => unreachable!("{other} is not a named Clifford gate"),
    }
}

/// Conjugate one word by a named Clifford gate: `C P C† = sign · P'`.
pub fn conjugate_word_clifford(word: &PauliWord, gate: &Gate) -> Result<(PauliWord, f64)> {
    if !gate.is_clifford() {
        return Err(Error::NotClifford(gate.to_string()));
    }
    let qubits = gate.qubits();
    if gate.max_qubit() >= word.n() {
        return Err(Error::Dimension {
            expected: gate.max_qubit() + 1,
            found: word.n(),
        });
    }
    let k = qubits.len();
    let mut local = PauliWord::identity(k);
    let mut sign = 1.0;
    let mut phase = super::word::Phase::ONE;
    for (pos, &q) in qubits.iter().enumerate() {
        let letter = word.letter(q);
        if letter == Letter::I {
            continue;
        }
        let (image, s) = letter_image(gate.kind(), pos, letter);
        let image = PauliWord::from_letters(&image)?;
        let (prod, ph) = mul_words_unchecked(&local, &image);
        local = prod;
        phase = phase * ph;
        sign *= s;
    }
    // Images of commuting letters multiply to a Hermitian word.
    debug_assert!(phase.is_real());
    if phase.exponent() == 2 {
        sign = -sign;
    }
    let mut out = *word;
    for (pos, &q) in qubits.iter().enumerate() {
        out.set(q, local.letter(pos));
    }
    Ok((out, sign))
}

/// Conjugate a sum by a named Clifford gate; cardinality is preserved.
pub fn conjugate_clifford(h: &PauliSum, gate: &Gate) -> Result<PauliSum> {
    if !gate.is_clifford() {
        return Err(Error::NotClifford(gate.to_string()));
    }
    let images = map_terms(h, |w, c| {
        conjugate_word_clifford(w, gate).map(|(w2, s)| vec![(w2, c * s)])
    })?;
    collect(h, images)
}

/// Pauli expansion of `U P U†` for every local word `P` on the gate's qubits.
///
/// Entry `i` lists `(local word index, real coefficient)` for the local word
/// with base-4 index `i` (digit `j` is the letter on `qubits[j]`).
pub fn local_conjugation_table(gate: &Gate) -> Result<Vec<Vec<(usize, f64)>>> {
    let k = gate.qubits().len();
    let u = gate.matrix();
    let ud = u.adjoint();
    let dim = (1usize << k) as f64;
    let basis: Vec<CMatrix> = (0..(1usize << (2 * k)))
        .map(|i| local_word_matrix(i, k))
        .collect();
    let mut table = Vec::with_capacity(basis.len());
    for (i, p) in basis.iter().enumerate() {
        let m = &u * p * &ud;
        let mut row = Vec::new();
        for (j, q) in basis.iter().enumerate() {
            let c: Complex64 = (q * &m).trace() / dim;
            if c.norm() < 1e-14 {
                continue;
            }
            if c.im.abs() > HERMITIAN_TOL {
                return Err(Error::NotHermitian {
                    word: format!("local {i} -> {j} under {gate}"),
                    imag: c.im,
                });
            }
            row.push((j, c.re));
        }
        table.push(row);
    }
    Ok(table)
}

/// Pauli expansion of a Hermitian gate's matrix, embedded in `n` qubits.
pub fn gate_expansion(gate: &Gate, n: usize) -> Result<PauliSum> {
    if gate.max_qubit() >= n {
        return Err(Error::Dimension {
            expected: gate.max_qubit() + 1,
            found: n,
        });
    }
    let k = gate.qubits().len();
    let u = gate.matrix();
    let dim = (1usize << k) as f64;
    let base = PauliWord::identity(n);
    let mut out = PauliSum::new(n);
    for i in 0..(1usize << (2 * k)) {
        let c: Complex64 = (local_word_matrix(i, k) * &u).trace() / dim;
        if c.norm() < 1e-14 {
            continue;
        }
        if c.im.abs() > HERMITIAN_TOL {
            return Err(Error::NotSelfInverse(gate.to_string()));
        }
        out.add_term(base.with_local(gate.qubits(), i), c.re)?;
    }
    Ok(out)
}

fn local_word_matrix(index: usize, k: usize) -> CMatrix {
    let mut m = CMatrix::identity(1, 1);
    for j in 0..k {
        m = kron(&pauli_matrix(((index >> (2 * j)) & 3) as u8), &m);
    }
    m
}

/// Exact conjugation `U H U†` by any supported gate.
///
/// Named Clifford gates go through [`conjugate_clifford`]; everything else
/// is expanded through the gate's local Pauli table. A one-qubit gate maps
/// each word to at most three words, a `k`-qubit gate to at most `4^k − 1`.
pub fn conjugate_unitary(h: &PauliSum, gate: &Gate) -> Result<PauliSum> {
    if gate.max_qubit() >= h.n() {
        return Err(Error::Dimension {
            expected: gate.max_qubit() + 1,
            found: h.n(),
        });
    }
    if gate.is_clifford() {
        return conjugate_clifford(h, gate);
    }
    conjugate_by_table(h, gate)
}

/// Table-driven conjugation regardless of gate class. Used directly as the
/// independent route when cross-checking the Clifford rules.
pub fn conjugate_by_table(h: &PauliSum, gate: &Gate) -> Result<PauliSum> {
    let table = local_conjugation_table(gate)?;
    let qubits = gate.qubits();
    let images = map_terms(h, |w, c| {
        let li = w.local_index(qubits);
        Ok(table[li]
            .iter()
            .map(|&(lj, cj)| (w.with_local(qubits, lj), c * cj))
            .collect())
    })?;
    collect(h, images)
}

/// Conjugate through a whole circuit: `(U_L ... U_1) H (U_L ... U_1)†`.
pub fn conjugate_circuit(h: &PauliSum, circuit: &Circuit) -> Result<PauliSum> {
    let mut out = h.clone();
    for g in circuit.gates() {
        out = conjugate_unitary(&out, g)?;
    }
    Ok(out)
}

type Images = Vec<Vec<(PauliWord, f64)>>;

fn map_terms<F>(h: &PauliSum, f: F) -> Result<Images>
where
    F: Fn(&PauliWord, f64) -> Result<Vec<(PauliWord, f64)>> + Sync,
{
    let terms: Vec<(&PauliWord, f64)> = h.iter().collect();
    if terms.len() >= PARALLEL_THRESHOLD {
        terms.par_iter().map(|(w, c)| f(w, *c)).collect()
    } else {
        terms.iter().map(|(w, c)| f(w, *c)).collect()
    }
}

// Merge in input order so the floating-point sums are reproducible.
fn collect(h: &PauliSum, images: Images) -> Result<PauliSum> {
    let mut out = PauliSum::new(h.n()).with_tolerance(h.tolerance());
    for list in images {
        for (w, c) in list {
            out.add_term(w, c)?;
        }
    }
    Ok(out)
}
