use thiserror::Error;

/// Errors raised across the objective-construction pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("qubit count {0} exceeds the 64-qubit word limit")]
    TooManyQubits(usize),

    #[error("dense cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: usize,
        cap: usize,
    },

    #[error("gate {0} is not a Clifford gate")]
    NotClifford(String),

    #[error("gate {0} is not self-inverse")]
    NotSelfInverse(String),

    #[error("operator is not Hermitian: imaginary coefficient {imag:e} on {word}")]
    NotHermitian { word: String, imag: f64 },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cardinality budget exceeded: forecast {forecast}, cap {cap}")]
    BudgetExceeded { forecast: f64, cap: usize },

    #[error("circuit exhausted after {0} gates")]
    CircuitExhausted(usize),

    #[error("certification failed: {0}")]
    Certification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
