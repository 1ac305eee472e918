//! Numerical tolerances shared across the crate.

/// Hermiticity, trace and positivity checks on density matrices and operators.
pub const VALIDATION: f64 = 1e-10;

/// Off-diagonal magnitude at which the Jacobi sweep is considered converged.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-12;

/// Maximum number of cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Branches whose probability falls below this are treated as absent.
pub const ZERO_PROBABILITY: f64 = 1e-12;

/// Positivity slack for Bell-diagonal parameters; pure Bell states sit on the boundary.
pub const BELL_POSITIVITY: f64 = 1e-12;

/// Two branch final energies closer than this are treated as equal when choosing
/// the selective weak-measurement outcome.
pub const SIGN_TIE: f64 = 1e-12;

/// Threshold for the component that fixes an eigenvector's phase.
pub const PHASE_PIVOT: f64 = 1e-8;
