//! Dense statevector simulation and the spectral tools used to certify
//! objectives.

mod measure;
mod schmidt;
mod spectral;
mod state;

pub use measure::{
    apply_sum, dispersion, expected_value, sampled_expected_value, sampled_with_shots,
    shots_per_term, word_expectation, SampledEstimate,
};
pub use schmidt::{schmidt_coefficients, schmidt_ebits, Ebits, SCHMIDT_TOL};
pub use spectral::{
    diagonalize, spectral_report, spectral_report_with_cap, stability_bounds, SpectralReport,
    DEFAULT_EIGEN_DIM, DEGENERACY_TOL,
};
pub use state::{run, run_from_zero, StateVector, DEFAULT_STATE_QUBITS};
