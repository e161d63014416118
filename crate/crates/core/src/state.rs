//! Validated two-qubit density matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix};

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = 1e-9;

/// A 4x4 Hermitian, unit-trace, positive semidefinite matrix on the basis
/// `(|a⟩,|b⟩,|c⟩,|d⟩) = (|00⟩,|01⟩,|10⟩,|11⟩)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

/// Deviations of a matrix from the density-matrix conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDiagnostics {
    pub hermitian_deviation: f64,
    pub trace_deviation: f64,
    pub min_eigenvalue: f64,
    pub purity: f64,
}

impl StateDiagnostics {
    pub fn of(m: &ComplexMatrix) -> Result<Self> {
        let hermitian_deviation = m.hermitian_deviation();
        let trace = m.trace();
        let trace_deviation = (trace - 1.0).norm();
        let symmetric = (*m + m.adjoint()) * 0.5;
        let min_eigenvalue = hermitian_eigenvalues(&symmetric)?[0];
        let purity = (symmetric * symmetric).trace().re;
        Ok(Self {
            hermitian_deviation,
            trace_deviation,
            min_eigenvalue,
            purity,
        })
    }

    /// First violated condition, if any.
    pub fn violation(&self) -> Option<String> {
        if !(self.hermitian_deviation <= HERMITIAN_TOL) {
            return Some(format!(
                "Hermiticity (max |rho - rho^dagger| = {:.3e})",
                self.hermitian_deviation
            ));
        }
        if !(self.trace_deviation <= TRACE_TOL) {
            return Some(format!("unit trace (|Tr rho - 1| = {:.3e})", self.trace_deviation));
        }
        if !(self.min_eigenvalue >= -PSD_TOL) {
            return Some(format!(
                "positivity (minimum eigenvalue {:.3e})",
                self.min_eigenvalue
            ));
        }
        if !(self.purity >= 0.25 - PSD_TOL && self.purity <= 1.0 + PSD_TOL) {
            return Some(format!("purity range (Tr rho^2 = {:.12})", self.purity));
        }
        None
    }
}

impl DensityMatrix {
    /// Validates `m` as a density matrix.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if m.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: m.dim(),
            });
        }
        if let Some(what) = StateDiagnostics::of(&m)?.violation() {
            return Err(Error::InvalidState(what));
        }
        Ok(Self(m))
    }

    /// Wraps a matrix produced by a trace-preserving map of a valid state.
    /// Callers that need the guarantee re-check with [`Self::diagnostics`].
    pub(crate) fn from_evolved(m: ComplexMatrix) -> Self {
        debug_assert_eq!(m.dim(), 4);
        Self(m)
    }

    /// `|ψ⟩⟨ψ|` for a (normalizable) four-component vector.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        if psi.len() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: psi.len(),
            });
        }
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidState("state vector has zero or non-finite norm".into()));
        }
        let normalized: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&normalized, &normalized)?)
    }

    pub fn maximally_mixed() -> Self {
        Self(crate::linalg::identity4() * 0.25)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn diagnostics(&self) -> Result<StateDiagnostics> {
        StateDiagnostics::of(&self.0)
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }
}
