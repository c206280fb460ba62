//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial degree must be at least 4, got {0}")]
    GridTooCoarse(usize),
    #[error("expected {expected} nodal values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("Newton iteration did not converge at b = {b}: residual {residual:.3e} after {iterations} iterations")]
    NonConvergence {
        b: f64,
        residual: f64,
        iterations: usize,
    },
    #[error("converged solution at b = {b} violates ground-state positivity")]
    SignChange { b: f64 },
    #[error("solution at b = {b} under-resolved on N = {n}: tail coefficient {tail:.3e} exceeds {threshold:.3e}")]
    UnderResolved {
        b: f64,
        n: usize,
        tail: f64,
        threshold: f64,
    },
    #[error("inner iteration diverged at t = {t}")]
    InnerDivergence { t: f64 },
    #[error("time-step control exhausted at t = {t}: energy drift {drift:.3e} still above target after {halvings} halvings")]
    StepControlExhausted { t: f64, drift: f64, halvings: usize },
    #[error("no interior mass maximum found in [{b_lo}, {b_hi}]")]
    NoInteriorMax { b_lo: f64, b_hi: f64 },
    #[error("mass slope at b = {b} indistinguishable from zero: |dM/db| = {slope:.3e}, noise estimate {noise:.3e}")]
    IndeterminateSlope { b: f64, slope: f64, noise: f64 },
    #[error("{path}: {msg}")]
    FileFormat { path: String, msg: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
