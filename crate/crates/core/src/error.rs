use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported matrix dimension {0} (expected 2, 3 or 4)")]
    UnsupportedDimension(usize),

    #[error("matrix is not Hermitian (max |H - H^dagger| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal mass {off_diagonal:.3e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),

    #[error("numeric domain error: {0}")]
    NumericDomain(String),

    #[error("degenerate spectrum ({0}); use the numeric-diagonalization evolution path")]
    DegenerateSpectrum(String),

    #[error("negative time t = {0}; the channel is defined forward in time only")]
    NegativeTime(f64),

    #[error("Kraus set is not trace preserving (max |sum K^dagger K - I| = {deviation:.3e})")]
    IncompleteKraus { deviation: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invariant violated at t = {t}: {invariant}")]
    InvariantViolation { t: f64, invariant: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Serialization(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
