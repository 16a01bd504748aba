//! Ansatz families, the classical outer-loop optimiser and acceptance
//! checks of witness states.

mod ansatz;
mod optimize;

pub use ansatz::{ansatz_state, AnsatzSpec, Family, Geometry};
pub use optimize::{minimize, minimize_with, OptimizationRun, OptimizerConfig, DEFAULT_BUDGET};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::pauli::PauliSum;
use crate::simulator::{
    expected_value, run_from_zero, spectral_report_with_cap, stability_bounds, StateVector,
};

/// `2^n` times the identity coefficient.
pub fn trace_of(objective: &PauliSum) -> f64 {
    objective.trace()
}

/// A candidate ground state: a circuit run on `|0...0>`, or a state.
#[derive(Debug, Clone)]
pub enum Witness {
    Circuit(Circuit),
    State(StateVector),
}

impl Witness {
    pub fn state(&self) -> Result<StateVector> {
        match self {
            Witness::Circuit(c) => run_from_zero(c),
            Witness::State(s) => Ok(s.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    pub energy: f64,
    /// `energy < delta`.
    pub accepted: bool,
    pub gap: f64,
    pub trace: f64,
    /// Stability bounds at `energy`; absent when the objective's spectrum
    /// does not support them (degenerate, zero trace or negative energy).
    pub bounds: Option<(f64, f64)>,
}

/// Exact energy of `witness`, the acceptance verdict at `delta`, and the
/// stability bounds from the certified gap and symbolic trace.
pub fn witness_check(
    objective: &PauliSum,
    witness: &Witness,
    delta: f64,
    max_dim: usize,
) -> Result<WitnessReport> {
    let state = witness.state()?;
    if state.n() != objective.n() {
        return Err(Error::Dimension {
            expected: objective.n(),
            found: state.n(),
        });
    }
    let energy = expected_value(&state, objective)?;
    let report = spectral_report_with_cap(objective, max_dim)?;
    let trace = trace_of(objective);
    let bounds = if report.degenerate {
        None
    } else {
        stability_bounds(energy, report.gap, trace).ok()
    };
    Ok(WitnessReport {
        energy,
        accepted: energy < delta,
        gap: report.gap,
        trace,
        bounds,
    })
}
