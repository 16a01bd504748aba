use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Default maximum qubit count for dense statevectors.
pub const DEFAULT_STATE_QUBITS: usize = 22;

/// Dense normalised amplitude vector; index bit `q` is qubit `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>` on `n` qubits.
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    /// Computational basis state `|index>`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_cap(n)?;
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {n} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    /// Normalise and wrap raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "amplitude count {dim} is not a power of two"
            )));
        }
        let n = dim.trailing_zeros() as usize;
        check_cap(n)?;
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidArgument("state has zero norm".into()));
        }
        let amps = amps.into_iter().map(|a| a / norm).collect();
        Ok(StateVector { n, amps })
    }

    /// Column `col` of a dense matrix, normalised.
    pub fn from_column(m: &CMatrix, col: usize) -> Result<Self> {
        Self::from_amplitudes(m.column(col).iter().copied().collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|<self|other>|^2`.
    pub fn overlap(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// `self ⊗ high`: `high` occupies the qubits after `self`'s.
    pub fn tensor(&self, high: &StateVector) -> Result<StateVector> {
        check_cap(self.n + high.n)?;
        let mut amps = Vec::with_capacity(self.dim() * high.dim());
        for h in &high.amps {
            for l in &self.amps {
                amps.push(l * h);
            }
        }
        Ok(StateVector {
            n: self.n + high.n,
            amps,
        })
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        if gate.max_qubit() >= self.n {
            return Err(Error::Dimension {
                expected: gate.max_qubit() + 1,
                found: self.n,
            });
        }
        apply_local(&mut self.amps, &gate.matrix(), gate.qubits());
        Ok(())
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.n() != self.n {
            return Err(Error::Dimension {
                expected: circuit.n(),
                found: self.n,
            });
        }
        for g in circuit.gates() {
            apply_local(&mut self.amps, &g.matrix(), g.qubits());
        }
        Ok(())
    }
}

fn check_cap(n: usize) -> Result<()> {
    if n > DEFAULT_STATE_QUBITS {
        Err(Error::CapExceeded {
            what: "statevector qubits",
            needed: n,
            cap: DEFAULT_STATE_QUBITS,
        })
    } else {
        Ok(())
    }
}

/// Apply a `2^k` local matrix on `qubits` in place.
pub(crate) fn apply_local(amps: &mut [Complex64], m: &CMatrix, qubits: &[usize]) {
    let k = qubits.len();
    let local_dim = 1usize << k;
    let mask: usize = qubits.iter().map(|&q| 1usize << q).sum();
    let offsets: Vec<usize> = (0..local_dim)
        .map(|l| {
            qubits
                .iter()
                .enumerate()
                .map(|(j, &q)| ((l >> j) & 1) << q)
                .sum()
        })
        .collect();
    let mut buf = vec![Complex64::new(0.0, 0.0); local_dim];
    for base in 0..amps.len() {
        if base & mask != 0 {
            continue;
        }
        for (l, off) in offsets.iter().enumerate() {
            buf[l] = amps[base | off];
        }
        for (r, off) in offsets.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (c, v) in buf.iter().enumerate() {
                acc += m[(r, c)] * v;
            }
            amps[base | off] = acc;
        }
    }
}

/// Run `circuit` on `input`, gates applied in listed order.
pub fn run(circuit: &Circuit, input: &StateVector) -> Result<StateVector> {
    let mut s = input.clone();
    s.apply_circuit(circuit)?;
    Ok(s)
}

/// Run `circuit` on `|0...0>`.
pub fn run_from_zero(circuit: &Circuit) -> Result<StateVector> {
    run(circuit, &StateVector::zero(circuit.n())?)
}
