//! Solvers and convergence analysis for generalized absolute value equations
//! (GAVEs) `Ax - B|x| = b`.
//!
//! The crate is organized around six pieces:
//!
//! - [`linalg`] — dense matrices, LU solves, operator norms, spectral radii,
//!   Matrix Market I/O;
//! - [`problem`] — GAVE instances, residuals, and the builtin test-problem
//!   generators;
//! - [`solver`] — the two-sequence relaxed matrix-splitting engine and the
//!   one-step (Newton-type) engine with optional momentum;
//! - [`presets`] — the named-method catalog (Picard, SOR-like, FPI, MSOR,
//!   NSOR, MGSOR, MFPI, SSMN, MAMS, ...) expressed as splitting configs;
//! - [`analysis`] — convergence constants, the 2x2 iteration-bound matrices
//!   and their spectral radii, sufficient-condition checks, and the
//!   comparison-theorem machinery;
//! - [`experiments`] — the fixed benchmark rows and reference iteration
//!   counts behind the reproduction harness.

pub mod analysis;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod presets;
pub mod problem;
pub mod solver;

pub use error::{Error, Result};
pub use linalg::{DenseMatrix, Vector};
pub use problem::{GaveProblem, ResidualReport};
pub use solver::{GrmsConfig, IterationOutcome, OneStepConfig, SolveStatus, StopRule};
