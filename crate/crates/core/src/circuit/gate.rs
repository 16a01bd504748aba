use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, I, ONE, ZERO};

/// Supported gate kinds.
///
/// `R`, `RYZ` and `RXY` are the Hermitian (self-inverse) rotations used by
/// the clock construction:
///
/// - `R(θ)   = X sin θ + Z cos θ`
/// - `RYZ(θ) = Y sin θ − Z cos θ`
/// - `RXY(θ) = X cos θ + Y sin θ`
///
/// `RX`, `RY`, `RZ` follow the usual `exp(−iθP/2)` convention and `CRY` is
/// a controlled `RY` (control first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    I,
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    T,
    Tdg,
    CNOT,
    CZ,
    SWAP,
    CSWAP,
    RX,
    RY,
    RZ,
    CRY,
    R,
    RYZ,
    RXY,
}

impl GateKind {
    pub const ALL: [GateKind; 20] = [
        GateKind::I,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::T,
        GateKind::Tdg,
        GateKind::CNOT,
        GateKind::CZ,
        GateKind::SWAP,
        GateKind::CSWAP,
        GateKind::RX,
        GateKind::RY,
        GateKind::RZ,
        GateKind::CRY,
        GateKind::R,
        GateKind::RYZ,
        GateKind::RXY,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::I => "I",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdg => "SDG",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::T => "T",
            GateKind::Tdg => "TDG",
            GateKind::CNOT => "CNOT",
            GateKind::CZ => "CZ",
            GateKind::SWAP => "SWAP",
            GateKind::CSWAP => "CSWAP",
            GateKind::RX => "RX",
            GateKind::RY => "RY",
            GateKind::RZ => "RZ",
            GateKind::CRY => "CRY",
            GateKind::R => "R",
            GateKind::RYZ => "RYZ",
            GateKind::RXY => "RXY",
        }
    }

    pub fn from_name(name: &str) -> Option<GateKind> {
        let upper = name.to_ascii_uppercase();
        let alias = match upper.as_str() {
            "CX" => "CNOT",
            "SDAG" => "SDG",
            "TDAG" => "TDG",
            "ID" => "I",
            other => other,
        };
        GateKind::ALL.iter().copied().find(|k| k.name() == alias)
    }

    pub fn arity(self) -> usize {
        match self {
            GateKind::CNOT | GateKind::CZ | GateKind::SWAP | GateKind::CRY => 2,
            GateKind::CSWAP => 3,
            _ => 1,
        }
    }

    pub fn is_parameterized(self) -> bool {
        matches!(
            self,
            GateKind::RX
                | GateKind::RY
                | GateKind::RZ
                | GateKind::CRY
                | GateKind::R
                | GateKind::RYZ
                | GateKind::RXY
        )
    }

    /// Classification by kind only; rotation angles are never inspected.
    pub fn is_clifford(self) -> bool {
        matches!(
            self,
            GateKind::I
                | GateKind::H
                | GateKind::S
                | GateKind::Sdg
                | GateKind::X
                | GateKind::Y
                | GateKind::Z
                | GateKind::CNOT
                | GateKind::CZ
                | GateKind::SWAP
        )
    }

    /// True exactly for kinds whose matrix is Hermitian (so `U² = I`).
    pub fn is_self_inverse(self) -> bool {
        matches!(
            self,
            GateKind::I
                | GateKind::H
                | GateKind::X
                | GateKind::Y
                | GateKind::Z
                | GateKind::CNOT
                | GateKind::CZ
                | GateKind::SWAP
                | GateKind::CSWAP
                | GateKind::R
                | GateKind::RYZ
                | GateKind::RXY
        )
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A gate applied to specific qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    kind: GateKind,
    qubits: Vec<usize>,
    angle: Option<f64>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: &[usize], angle: Option<f64>) -> Result<Gate> {
        if qubits.len() != kind.arity() {
            return Err(Error::InvalidArgument(format!(
                "{kind} takes {} qubits, got {}",
                kind.arity(),
                qubits.len()
            )));
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(Error::InvalidArgument(format!(
                    "{kind} uses qubit {q} twice"
                )));
            }
        }
        match (kind.is_parameterized(), angle) {
            (true, None) => {
                return Err(Error::InvalidArgument(format!("{kind} requires an angle")))
            }
            (false, Some(_)) => {
                return Err(Error::InvalidArgument(format!("{kind} takes no angle")))
            }
            (true, Some(a)) if !a.is_finite() => {
                return Err(Error::InvalidArgument(format!(
                    "{kind} angle is not finite"
                )))
            }
            _ => {}
        }
        Ok(Gate {
            kind,
            qubits: qubits.to_vec(),
            angle,
        })
    }

    fn fixed(kind: GateKind, qubits: &[usize]) -> Gate {
        Gate::new(kind, qubits, None).expect("valid fixed gate")
    }

    fn rotation(kind: GateKind, qubits: &[usize], theta: f64) -> Gate {
        Gate::new(kind, qubits, Some(theta)).expect("valid rotation gate")
    }

    pub fn id(q: usize) -> Gate {
        Gate::fixed(GateKind::I, &[q])
    }
    pub fn h(q: usize) -> Gate {
        Gate::fixed(GateKind::H, &[q])
    }
    pub fn s(q: usize) -> Gate {
        Gate::fixed(GateKind::S, &[q])
    }
    pub fn sdg(q: usize) -> Gate {
        Gate::fixed(GateKind::Sdg, &[q])
    }
    pub fn x(q: usize) -> Gate {
        Gate::fixed(GateKind::X, &[q])
    }
    pub fn y(q: usize) -> Gate {
        Gate::fixed(GateKind::Y, &[q])
    }
    pub fn z(q: usize) -> Gate {
        Gate::fixed(GateKind::Z, &[q])
    }
    pub fn t(q: usize) -> Gate {
        Gate::fixed(GateKind::T, &[q])
    }
    pub fn tdg(q: usize) -> Gate {
        Gate::fixed(GateKind::Tdg, &[q])
    }
    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::fixed(GateKind::CNOT, &[control, target])
    }
    pub fn cz(a: usize, b: usize) -> Gate {
        Gate::fixed(GateKind::CZ, &[a, b])
    }
    pub fn swap(a: usize, b: usize) -> Gate {
        Gate::fixed(GateKind::SWAP, &[a, b])
    }
    pub fn cswap(control: usize, a: usize, b: usize) -> Gate {
        Gate::fixed(GateKind::CSWAP, &[control, a, b])
    }
    pub fn rx(q: usize, theta: f64) -> Gate {
        Gate::rotation(GateKind::RX, &[q], theta)
    }
    pub fn ry(q: usize, theta: f64) -> Gate {
        Gate::rotation(GateKind::RY, &[q], theta)
    }
    pub fn rz(q: usize, theta: f64) -> Gate {
        Gate::rotation(GateKind::RZ, &[q], theta)
    }
    pub fn cry(control: usize, target: usize, theta: f64) -> Gate {
        Gate::rotation(GateKind::CRY, &[control, target], theta)
    }
    /// Hermitian rotation `X sin θ + Z cos θ`.
    pub fn r(q: usize, theta: f64) -> Gate {
        Gate::rotation(GateKind::R, &[q], theta)
    }
    pub fn ryz(q: usize, theta: f64) -> Gate {
        Gate::rotation(GateKind::RYZ, &[q], theta)
    }
    pub fn rxy(q: usize, theta: f64) -> Gate {
        Gate::rotation(GateKind::RXY, &[q], theta)
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn angle(&self) -> Option<f64> {
        self.angle
    }

    /// Same gate with a new angle. Fails on unparameterised kinds.
    pub fn with_angle(&self, theta: f64) -> Result<Gate> {
        Gate::new(self.kind, &self.qubits, Some(theta))
    }

    pub fn is_clifford(&self) -> bool {
        self.kind.is_clifford()
    }

    pub fn is_self_inverse(&self) -> bool {
        self.kind.is_self_inverse()
    }

    pub fn max_qubit(&self) -> usize {
        self.qubits.iter().copied().max().unwrap_or(0)
    }

    /// Local `2^k` matrix; local index bit `j` is `qubits()[j]`.
    pub fn matrix(&self) -> CMatrix {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let th = self.angle.unwrap_or(0.0);
        let m2 = |v: [Complex64; 4]| CMatrix::from_row_slice(2, 2, &v);
        let h = FRAC_1_SQRT_2;
        match self.kind {
            GateKind::I => m2([ONE, ZERO, ZERO, ONE]),
            GateKind::H => m2([c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)]),
            GateKind::S => m2([ONE, ZERO, ZERO, I]),
            GateKind::Sdg => m2([ONE, ZERO, ZERO, -I]),
            GateKind::X => m2([ZERO, ONE, ONE, ZERO]),
            GateKind::Y => m2([ZERO, -I, I, ZERO]),
            GateKind::Z => m2([ONE, ZERO, ZERO, -ONE]),
            GateKind::T => m2([ONE, ZERO, ZERO, c(h, h)]),
            GateKind::Tdg => m2([ONE, ZERO, ZERO, c(h, -h)]),
            GateKind::RX => {
                let (s, co) = (th / 2.0).sin_cos();
                m2([c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0)])
            }
            GateKind::RY => {
                let (s, co) = (th / 2.0).sin_cos();
                m2([c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0)])
            }
            GateKind::RZ => {
                let (s, co) = (th / 2.0).sin_cos();
                m2([c(co, -s), ZERO, ZERO, c(co, s)])
            }
            GateKind::R => {
                let (s, co) = th.sin_cos();
                m2([c(co, 0.0), c(s, 0.0), c(s, 0.0), c(-co, 0.0)])
            }
            GateKind::RYZ => {
                let (s, co) = th.sin_cos();
                m2([c(-co, 0.0), c(0.0, -s), c(0.0, s), c(co, 0.0)])
            }
            GateKind::RXY => {
                let (s, co) = th.sin_cos();
                m2([ZERO, c(co, -s), c(co, s), ZERO])
            }
            GateKind::CNOT => permutation(4, |b| if b & 1 == 1 { b ^ 2 } else { b }),
            GateKind::SWAP => permutation(4, |b| ((b & 1) << 1) | ((b >> 1) & 1)),
            GateKind::CSWAP => permutation(8, |b| {
                if b & 1 == 1 {
                    let (a, bb) = ((b >> 1) & 1, (b >> 2) & 1);
                    1 | (bb << 1) | (a << 2)
                } else {
                    b
                }
            }),
            GateKind::CZ => {
                let mut m = CMatrix::identity(4, 4);
                m[(3, 3)] = -ONE;
                m
            }
            GateKind::CRY => {
                let (s, co) = (th / 2.0).sin_cos();
                let mut m = CMatrix::identity(4, 4);
                // Control is local bit 0, target local bit 1: target flips 1 <-> 3.
                m[(1, 1)] = c(co, 0.0);
                m[(1, 3)] = c(-s, 0.0);
                m[(3, 1)] = c(s, 0.0);
                m[(3, 3)] = c(co, 0.0);
                m
            }
        }
    }
}

fn permutation(dim: usize, f: impl Fn(usize) -> usize) -> CMatrix {
    let mut m = CMatrix::zeros(dim, dim);
    for b in 0..dim {
        m[(f(b), b)] = ONE;
    }
    m
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for q in &self.qubits {
            write!(f, " {q}")?;
        }
        if let Some(a) = self.angle {
            write!(f, " {a:?}")?;
        }
        Ok(())
    }
}
