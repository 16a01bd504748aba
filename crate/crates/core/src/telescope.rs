//! Telescoping objectives: conjugate the sum of single-qubit projectors
//! `Σ_i |1><1|_i` through a circuit one gate at a time.
//!
//! The spectrum is the Hamming-weight spectrum `{0, 1, ..., n}` at every
//! step, so the gap is always 1 and the ground state is the output of the
//! prefix applied so far.

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::pauli::{conjugate_circuit, conjugate_unitary, PauliSum, PauliWord};
use crate::simulator::{
    expected_value, run, spectral_report_with_cap, stability_bounds, word_expectation, StateVector,
    DEFAULT_EIGEN_DIM,
};

/// Default cap on the number of terms during extension.
pub const DEFAULT_CARDINALITY_CAP: usize = 100_000;

/// `(n/2) I − ½ Σ Z_i`, conjugated by the single-qubit map `v` when given.
///
/// The ground state is `v|0...0>` with energy 0.
pub fn initial_hamiltonian(n: usize, v: Option<&Circuit>) -> Result<PauliSum> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one qubit".into()));
    }
    let mut h = PauliSum::identity(n, n as f64 / 2.0);
    for q in 0..n {
        h.add_term(PauliWord::single(n, q, crate::pauli::Letter::Z), -0.5)?;
    }
    match v {
        None => Ok(h),
        Some(v) => {
            check_product_map(v, n)?;
            conjugate_circuit(&h, v)
        }
    }
}

fn check_product_map(v: &Circuit, n: usize) -> Result<()> {
    if v.n() != n {
        return Err(Error::Dimension {
            expected: n,
            found: v.n(),
        });
    }
    if let Some(g) = v.gates().iter().find(|g| g.qubits().len() != 1) {
        return Err(Error::InvalidArgument(format!(
            "product map may only contain single-qubit gates, found `{g}`"
        )));
    }
    Ok(())
}

/// Per-gate cardinality growth factor used by [`budget_check`]: 1 for named
/// Clifford gates, `16^k` for a `k`-qubit non-Clifford gate.
pub fn growth_factor(gate: &crate::circuit::Gate) -> f64 {
    if gate.is_clifford() {
        1.0
    } else {
        16f64.powi(gate.qubits().len() as i32)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BudgetForecast {
    pub initial: usize,
    pub forecast: f64,
    pub cap: usize,
    pub within: bool,
}

/// Upper bound on the final cardinality without building anything:
/// `(n + 1) × Π growth_factor(g)`.
pub fn budget_check(c: &Circuit, max_cardinality: usize) -> BudgetForecast {
    forecast_from(c.n() + 1, c.gates(), max_cardinality)
}

fn forecast_from(initial: usize, gates: &[crate::circuit::Gate], cap: usize) -> BudgetForecast {
    let forecast = gates
        .iter()
        .fold(initial as f64, |acc, g| acc * growth_factor(g));
    BudgetForecast {
        initial,
        forecast,
        cap,
        within: forecast <= cap as f64,
    }
}

/// Telescoping objective after the first `k` gates of `circuit`.
#[derive(Debug, Clone)]
pub struct TelescopeObjective {
    h: PauliSum,
    k: usize,
    circuit: Circuit,
    product_map: Option<Circuit>,
    cap: usize,
}

impl TelescopeObjective {
    pub fn new(circuit: Circuit, product_map: Option<Circuit>) -> Result<Self> {
        let h = initial_hamiltonian(circuit.n(), product_map.as_ref())?;
        Ok(TelescopeObjective {
            h,
            k: 0,
            circuit,
            product_map,
            cap: DEFAULT_CARDINALITY_CAP,
        })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// Build and extend through every gate.
    pub fn build(circuit: Circuit, product_map: Option<Circuit>, cap: usize) -> Result<Self> {
        let mut t = Self::new(circuit, product_map)?.with_cap(cap);
        t.extend_all()?;
        Ok(t)
    }

    pub fn h(&self) -> &PauliSum {
        &self.h
    }

    pub fn into_h(self) -> PauliSum {
        self.h
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.circuit.n()
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn product_map(&self) -> Option<&Circuit> {
        self.product_map.as_ref()
    }

    pub fn cardinality(&self) -> usize {
        self.h.cardinality()
    }

    pub fn is_complete(&self) -> bool {
        self.k == self.circuit.len()
    }

    /// Forecast for the remaining gates starting from the current sum.
    pub fn forecast(&self) -> BudgetForecast {
        forecast_from(
            self.cardinality(),
            &self.circuit.gates()[self.k..],
            self.cap,
        )
    }

    /// Conjugate by gate `k`. Leaves `self` untouched on error.
    pub fn extend(&mut self) -> Result<()> {
        let gate = self
            .circuit
            .gates()
            .get(self.k)
            .ok_or(Error::CircuitExhausted(self.k))?;
        let next = conjugate_unitary(&self.h, gate)?;
        if next.cardinality() > self.cap {
            return Err(Error::BudgetExceeded {
                forecast: self.forecast().forecast,
                cap: self.cap,
            });
        }
        self.h = next;
        self.k += 1;
        Ok(())
    }

    pub fn extend_all(&mut self) -> Result<()> {
        while !self.is_complete() {
            self.extend()?;
        }
        Ok(())
    }

    /// `v|0...0>`.
    pub fn input_state(&self) -> Result<StateVector> {
        let zero = StateVector::zero(self.n())?;
        match &self.product_map {
            Some(v) => run(v, &zero),
            None => Ok(zero),
        }
    }

    /// Output of the first `k` gates on the input state.
    pub fn prefix_output(&self) -> Result<StateVector> {
        run(&self.circuit.prefix(self.k), &self.input_state()?)
    }

    pub fn certify(&self) -> Result<Certification> {
        self.certify_with_cap(DEFAULT_EIGEN_DIM)
    }

    /// Dense certification of the current objective.
    pub fn certify_with_cap(&self, max_dim: usize) -> Result<Certification> {
        let report = spectral_report_with_cap(&self.h, max_dim)?;
        if report.degenerate {
            return Err(Error::Certification(format!(
                "degenerate ground space at k = {} (gap {:e})",
                self.k, report.gap
            )));
        }
        let output = self.prefix_output()?;
        let circuit_energy = expected_value(&output, &self.h)?;
        let ground_overlap = report.ground_vector.overlap(&output)?;
        let bounds = stability_bounds(circuit_energy, report.gap, self.h.trace())?;
        Ok(Certification {
            k: self.k,
            cardinality: self.cardinality(),
            eigenvalues: report.eigenvalues,
            gap: report.gap,
            ground_overlap,
            circuit_energy,
            bounds,
            max_residual: report.max_residual,
        })
    }
}

/// Dense certification of one telescope step.
#[derive(Debug, Clone, PartialEq)]
pub struct Certification {
    pub k: usize,
    pub cardinality: usize,
    pub eigenvalues: Vec<f64>,
    pub gap: f64,
    pub ground_overlap: f64,
    pub circuit_energy: f64,
    /// Stability bounds at `circuit_energy`.
    pub bounds: (f64, f64),
    pub max_residual: f64,
}

impl Certification {
    /// Spectrum equals the Hamming-weight spectrum within `tol`.
    pub fn spectrum_is_hamming(&self, n: usize, tol: f64) -> bool {
        let mut expect = Vec::with_capacity(1 << n);
        for x in 0usize..1 << n {
            expect.push(x.count_ones() as f64);
        }
        expect.sort_by(f64::total_cmp);
        expect.len() == self.eigenvalues.len()
            && expect
                .iter()
                .zip(&self.eigenvalues)
                .all(|(a, b)| (a - b).abs() <= tol)
    }

    /// Gap 1, zero circuit energy and unit ground overlap.
    pub fn passed(&self) -> bool {
        (self.gap - 1.0).abs() <= 1e-8
            && self.circuit_energy.abs() <= 1e-9
            && self.ground_overlap >= 1.0 - 1e-9
    }
}

/// Probability of reading 0 on qubit 0 after a final Hadamard:
/// `(1 + <X_0>) / 2`.
pub fn ancilla_zero_probability(s: &StateVector) -> f64 {
    let x0 = PauliWord::single(s.n(), 0, crate::pauli::Letter::X);
    0.5 * (1.0 + word_expectation(s, &x0))
}
