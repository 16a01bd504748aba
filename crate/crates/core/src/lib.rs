//! Compile quantum circuits into variational objective functions.
//!
//! An objective is a real-weighted sum of Pauli words whose unique ground
//! state is the output (or history state) of a given circuit. Two
//! constructions are provided:
//!
//! - [`telescope`]: conjugate a sum of single-qubit projectors through the
//!   circuit. Clifford gates leave the number of terms unchanged, so the
//!   objective stays small whenever the circuit has few non-Clifford gates.
//! - [`clock`]: a Feynman-Kitaev style propagation Hamiltonian on a binary
//!   clock register. Works for any circuit at the cost of `O(log L)` extra
//!   qubits and `O(L^2)` terms.
//!
//! Both are certified at desk scale by dense diagonalisation
//! ([`simulator::spectral_report`]) and by the variational stability bounds
//! in [`simulator::stability_bounds`].

pub mod arealaw;
pub mod circuit;
pub mod clock;
pub mod error;
pub mod linalg;
pub mod pauli;
pub mod simulator;
pub mod telescope;
pub mod variational;

pub use error::{Error, Result};
pub use num_complex::Complex64;
