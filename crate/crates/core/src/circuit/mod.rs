//! Circuits, gate classification, the plaintext circuit format and the
//! fixtures used throughout the test suites.
//!
//! File format: one gate per line, `NAME q0 [q1 [q2]] [angle]`, angles in
//! radians, `#` starts a comment. An optional `QUBITS <n>` line fixes the
//! width; otherwise it is one more than the largest qubit index used.

mod compile;
mod gate;
pub mod random;

use std::fmt;

pub use compile::compile_self_inverse;
pub use gate::{Gate, GateKind};

use crate::error::{Error, Result};
use crate::linalg::{embed, CMatrix};

/// Ordered gate list on `n` qubits.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
    name: Option<String>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Circuit {
            n,
            gates: Vec::new(),
            name: None,
        }
    }

    pub fn from_gates(n: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut c = Circuit::new(n);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        if gate.max_qubit() >= self.n {
            return Err(Error::InvalidArgument(format!(
                "gate `{gate}` exceeds circuit width {}",
                self.n
            )));
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Circuit made of the first `k` gates.
    pub fn prefix(&self, k: usize) -> Circuit {
        Circuit {
            n: self.n,
            gates: self.gates[..k.min(self.gates.len())].to_vec(),
            name: self.name.clone(),
        }
    }

    pub fn non_clifford_count(&self) -> usize {
        self.gates.iter().filter(|g| !g.is_clifford()).count()
    }

    pub fn is_self_inverse(&self) -> bool {
        self.gates.iter().all(Gate::is_self_inverse)
    }

    /// Indices of parameterised gates, in circuit order.
    pub fn parameter_slots(&self) -> Vec<usize> {
        self.gates
            .iter()
            .enumerate()
            .filter(|(_, g)| g.kind().is_parameterized())
            .map(|(i, _)| i)
            .collect()
    }

    /// Same circuit with the parameterised gates' angles replaced in order.
    pub fn with_parameters(&self, angles: &[f64]) -> Result<Circuit> {
        let slots = self.parameter_slots();
        if slots.len() != angles.len() {
            return Err(Error::InvalidArgument(format!(
                "circuit has {} parameters, got {}",
                slots.len(),
                angles.len()
            )));
        }
        let mut out = self.clone();
        for (&slot, &a) in slots.iter().zip(angles) {
            out.gates[slot] = out.gates[slot].with_angle(a)?;
        }
        Ok(out)
    }

    /// Dense unitary `U_L ... U_1`. Fails above `max_qubits`.
    pub fn unitary(&self, max_qubits: usize) -> Result<CMatrix> {
        if self.n > max_qubits {
            return Err(Error::CapExceeded {
                what: "circuit unitary qubits",
                needed: self.n,
                cap: max_qubits,
            });
        }
        let dim = 1usize << self.n;
        let mut u = CMatrix::identity(dim, dim);
        for g in &self.gates {
            u = embed(&g.matrix(), g.qubits(), self.n) * u;
        }
        Ok(u)
    }

    pub fn parse(text: &str) -> Result<Circuit> {
        let mut declared: Option<usize> = None;
        let mut gates = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let head = tokens.next().expect("non-empty line");
            if head.eq_ignore_ascii_case("QUBITS") {
                if declared.is_some() || !gates.is_empty() {
                    return Err(err("QUBITS must appear once, before any gate".into()));
                }
                let n: usize = tokens
                    .next()
                    .ok_or_else(|| err("QUBITS needs a count".into()))?
                    .parse()
                    .map_err(|e| err(format!("bad qubit count: {e}")))?;
                if tokens.next().is_some() {
                    return Err(err("trailing tokens after QUBITS".into()));
                }
                declared = Some(n);
                continue;
            }
            let kind =
                GateKind::from_name(head).ok_or_else(|| err(format!("unknown gate `{head}`")))?;
            let rest: Vec<&str> = tokens.collect();
            let arity = kind.arity();
            let expected = arity + usize::from(kind.is_parameterized());
            if rest.len() < expected {
                let what = if rest.len() == arity && kind.is_parameterized() {
                    "missing angle".to_string()
                } else {
                    format!("{kind} needs {arity} qubit indices")
                };
                return Err(err(what));
            }
            if rest.len() > expected {
                return Err(err(format!("too many operands for {kind}")));
            }
            let qubits = rest[..arity]
                .iter()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| err(format!("bad qubit index `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            let angle = if kind.is_parameterized() {
                let t = rest[arity];
                Some(
                    t.parse::<f64>()
                        .map_err(|_| err(format!("bad angle `{t}`")))?,
                )
            } else {
                None
            };
            if let Some(n) = declared {
                if let Some(&q) = qubits.iter().find(|&&q| q >= n) {
                    return Err(err(format!("qubit index {q} out of range for {n} qubits")));
                }
            }
            let gate = Gate::new(kind, &qubits, angle).map_err(|e| err(e.to_string()))?;
            gates.push(gate);
        }
        let n =
            declared.unwrap_or_else(|| gates.iter().map(|g| g.max_qubit() + 1).max().unwrap_or(0));
        Circuit::from_gates(n, gates)
    }

    /// Canonical text form; `parse(to_text(c)) == c` up to the name label.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QUBITS {}", self.n)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Circuit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Circuit::parse(s)
    }
}

/// Two-qubit Bell-pair circuit `H 0; CNOT 0 1`.
pub fn bell_circuit() -> Circuit {
    Circuit::from_gates(2, [Gate::h(0), Gate::cnot(0, 1)])
        .expect("valid")
        .with_name("bell")
}

/// Swap test on two `d`-qubit registers.
///
/// Qubit 0 is the ancilla, qubits `1..=d` hold the first register and
/// `d+1..=2d` the second. The closing Hadamard on the ancilla is left to
/// the measurement: the probability of reading zero after it is
/// `(1 + <X_0>) / 2` on the returned circuit's output.
pub fn swap_test_circuit(d: usize) -> Result<Circuit> {
    if d < 1 {
        return Err(Error::InvalidArgument(
            "swap test needs at least one qubit per register".into(),
        ));
    }
    let mut c = Circuit::new(2 * d + 1).with_name(format!("swap_test_{d}"));
    c.push(Gate::h(0))?;
    for i in 1..=d {
        c.push(Gate::cswap(0, i, d + i))?;
    }
    Ok(c)
}
