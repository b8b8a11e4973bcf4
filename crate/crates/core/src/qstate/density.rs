use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::entropy::shannon_entropy;
use super::NORM_TOLERANCE;
use crate::{Error, Result};

/// Hermitian, unit-trace matrix describing one party's reduced state.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Checks hermiticity and trace to [`NORM_TOLERANCE`]. Positivity is
    /// checked where the spectrum is needed.
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if !entries.is_square() || entries.is_empty() {
            return Err(Error::InvalidState(format!(
                "density matrix must be square and non-empty, got {:?}",
                entries.shape()
            )));
        }
        let asym = (&entries - entries.adjoint()).camax();
        if asym.is_nan() || asym > NORM_TOLERANCE {
            return Err(Error::InvalidState(format!(
                "density matrix is not Hermitian (deviation {asym:e})"
            )));
        }
        let trace = entries.trace();
        if !((trace.re - 1.0).abs() <= NORM_TOLERANCE && trace.im.abs() <= NORM_TOLERANCE) {
            return Err(Error::InvalidState(format!(
                "density matrix trace is {trace}, expected 1"
            )));
        }
        // symmetrize away the residual so the eigensolver sees an exact Hermitian input
        let entries = (&entries + entries.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(DensityMatrix { entries })
    }

    /// Diagonal density matrix with the given populations.
    pub fn from_diagonal(populations: &[f64]) -> Result<Self> {
        let n = populations.len();
        Self::new(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(populations[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Eigenvalues in non-increasing order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut vals: Vec<f64> = SymmetricEigen::new(self.entries.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        vals.sort_by(|x, y| y.total_cmp(x));
        vals
    }
}

/// `-tr(ρ log₂ ρ)` in ebits.
///
/// Eigenvalues in `[-1e-12, 0)` are treated as numerical noise and clamped to
/// zero; anything more negative means `rho` is not a state.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let eigenvalues = rho.eigenvalues();
    if let Some(&min) = eigenvalues.last() {
        if min < -NORM_TOLERANCE {
            return Err(Error::InvalidState(format!(
                "density matrix has negative eigenvalue {min:e}"
            )));
        }
    }
    Ok(shannon_entropy(
        eigenvalues.into_iter().map(|mu| mu.clamp(0.0, 1.0)),
    ))
}
