use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eigh, CMatrix};
use crate::pauli::PauliSum;

use super::StateVector;

/// Default cap on the dense eigensolver dimension.
pub const DEFAULT_EIGEN_DIM: usize = 4096;

/// Gaps below this are reported as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct SpectralReport {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub gap: f64,
    pub ground_vector: StateVector,
    pub degenerate: bool,
    /// Largest `||H v - λ v||` over all returned pairs.
    pub max_residual: f64,
}

impl SpectralReport {
    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }
}

/// Full dense diagonalisation: ascending eigenvalues and eigenvector columns.
pub fn diagonalize(h: &PauliSum, max_dim: usize) -> Result<(Vec<f64>, CMatrix)> {
    let dense = dense_within(h, max_dim)?;
    Ok(eigh(&dense))
}

fn dense_within(h: &PauliSum, max_dim: usize) -> Result<CMatrix> {
    let dim = 1usize.checked_shl(h.n() as u32).unwrap_or(usize::MAX);
    if h.n() >= usize::BITS as usize || dim > max_dim {
        return Err(Error::CapExceeded {
            what: "eigensolver dimension",
            needed: dim,
            cap: max_dim,
        });
    }
    h.to_dense(h.n())
}

pub fn spectral_report(h: &PauliSum) -> Result<SpectralReport> {
    spectral_report_with_cap(h, DEFAULT_EIGEN_DIM)
}

pub fn spectral_report_with_cap(h: &PauliSum, max_dim: usize) -> Result<SpectralReport> {
    let dense = dense_within(h, max_dim)?;
    let (eigenvalues, vectors) = eigh(&dense);
    let hv = &dense * &vectors;
    let max_residual = (0..eigenvalues.len())
        .map(|j| (hv.column(j) - vectors.column(j) * Complex64::from(eigenvalues[j])).norm())
        .fold(0.0, f64::max);
    let gap = if eigenvalues.len() > 1 {
        (eigenvalues[1] - eigenvalues[0]).max(0.0)
    } else {
        0.0
    };
    Ok(SpectralReport {
        degenerate: eigenvalues.len() > 1 && gap < DEGENERACY_TOL,
        ground_vector: StateVector::from_column(&vectors, 0)?,
        eigenvalues,
        gap,
        max_residual,
    })
}

/// Overlap bounds for a trial state of the given energy against a
/// zero-energy non-degenerate ground state: `(1 - E/gap, 1 - E/trace)`.
///
/// The lower bound can be negative, in which case it is vacuous. Energies
/// within `1e-9` below zero are treated as zero.
pub fn stability_bounds(energy: f64, gap: f64, trace: f64) -> Result<(f64, f64)> {
    if gap.is_nan() || gap <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "gap must be positive, got {gap}"
        )));
    }
    if trace.is_nan() || trace <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "trace must be positive, got {trace}"
        )));
    }
    let energy = if (-1e-9..0.0).contains(&energy) {
        0.0
    } else {
        energy
    };
    if energy.is_nan() || energy < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "energy must be non-negative, got {energy}"
        )));
    }
    Ok((1.0 - energy / gap, 1.0 - energy / trace))
}
