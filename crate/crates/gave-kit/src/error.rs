//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the linear algebra kernels, generators, and solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("shape mismatch: {expected_rows}x{expected_cols} expected, got {rows}x{cols}")]
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("singular matrix: pivot in column {column} below threshold")]
    SingularMatrix { column: usize },

    #[error("power iteration failed to converge within {iterations} sweeps")]
    NoConvergence { iterations: usize },

    #[error("negative entry at ({row},{col}) where a nonnegative matrix is required")]
    NegativeEntry { row: usize, col: usize },

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("method `{0}` has no dedicated convergence condition")]
    UnsupportedMethod(String),

    #[error("outcome carries no error trace")]
    TraceUnavailable,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
