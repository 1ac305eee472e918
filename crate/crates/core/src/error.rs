use thiserror::Error;

/// Errors raised by matrix operations, state validation and the work routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("entry buffer of length {len} does not describe a {dim}x{dim} matrix")]
    InvalidLength { dim: usize, len: usize },

    #[error("matrix dimension must be positive")]
    EmptyMatrix,

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian: max |A - A^dagger| = {residual:.3e}")]
    NotHermitian { residual: f64 },

    #[error("state has negative eigenvalue {eigenvalue:.3e}")]
    NegativeEigenvalue { eigenvalue: f64 },

    #[error("trace is {trace:.12} (residual {residual:.3e}), expected 1")]
    TraceNotOne { trace: f64, residual: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal {residual:.3e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("Bloch vector {name} has length {norm:.12} > 1")]
    BlochVectorTooLong { name: &'static str, norm: f64 },

    #[error("correlation coefficient c{index} = {value} is outside [-1, 1]")]
    CoefficientOutOfRange { index: usize, value: f64 },

    #[error("Bell-diagonal parameters give negative eigenvalue {eigenvalue:.3e}")]
    NonPhysicalBellDiagonal { eigenvalue: f64 },

    #[error("energies must be ascending: level {index} is {value} after {previous}")]
    EnergiesNotAscending {
        index: usize,
        previous: f64,
        value: f64,
    },

    #[error("energy eigenbasis is not unitary: max |B^dagger B - I| = {residual:.3e}")]
    BasisNotUnitary { residual: f64 },

    #[error("invalid projector set: {reason} (residual {residual:.3e})")]
    InvalidProjectors { reason: &'static str, residual: f64 },

    #[error("measurement strength must be finite and non-negative, got {0}")]
    InvalidStrength(f64),

    #[error("level spacing must be positive, got {0}")]
    InvalidLevelSpacing(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
