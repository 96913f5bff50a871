//! Error types shared across the library.

use thiserror::Error;

/// Errors produced while constructing or analyzing algebras and spaces.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k}); residual {residual:?}")]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        residual: Vec<String>,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("subspace is not a subalgebra: {0}")]
    NotASubalgebra(String),
    #[error("subspace is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("isotropy subalgebra is not of compact type: {0}")]
    IsotropyNotCompactType(String),
    #[error("complement is not ad(h)-invariant: {0}")]
    ComplementNotInvariant(String),
    #[error("inner product is not ad(h)-invariant: violated at (Z={z}, x={x}, y={y})")]
    MetricNotInvariant { z: usize, x: usize, y: usize },
    #[error("metric is not symmetric positive definite: {0}")]
    MetricNotPositiveDefinite(String),
    #[error("Levi factor is not ad(h)-invariant: {0}")]
    LeviNotInvariant(String),
    #[error("supplied subspace is not a valid Levi factor: {0}")]
    LeviCheckFailed(String),
    #[error("subspace is not normalized by the isotropy algebra: {0}")]
    NotNormalized(String),
    #[error("algebra is not two-step nilpotent: {0}")]
    NotTwoStep(String),
    #[error("spectrum is in numeric mode; exact audit refused")]
    SpectrumNumeric,
    #[error("Clifford relations violated: {0}")]
    CliffordRelationViolation(String),
    #[error("gonil2 hypothesis ({which}) failed at sample {sample}")]
    Gonil2HypothesisFailed { which: u8, sample: String },
    #[error("schema error at {path}: {message}")]
    SchemaError { path: String, message: String },
    #[error("construction error: {0}")]
    Construction(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
