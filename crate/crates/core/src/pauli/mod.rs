//! Exact algebra over weighted sums of Pauli words.
//!
//! Conjugation by named Clifford gates maps words to words (cardinality is
//! unchanged); any other gate is expanded through its local Pauli table.
//!
//! Text format, one term per line: `<coefficient> <letters>`, e.g.
//! `0.5 ZIIZ`. Letter `i` acts on qubit `i`. Lines are written in
//! canonical word order and `#` starts a comment.

mod conjugate;
mod sum;
mod word;

pub use conjugate::{
    conjugate_by_table, conjugate_circuit, conjugate_clifford, conjugate_unitary,
    conjugate_word_clifford, gate_expansion, local_conjugation_table,
};
pub use sum::{
    PauliOperator, PauliSum, PauliTerm, DEFAULT_DENSE_QUBITS, DEFAULT_PRUNE_TOL, HERMITIAN_TOL,
};
pub use word::{mul_words, Letter, PauliWord, Phase, MAX_QUBITS};
