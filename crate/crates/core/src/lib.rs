//! Work extraction from qubit states: ergotropy, daemonic ergotropy under
//! projective and weak ancilla measurements, and total/non-local work of
//! two-qubit states.
//!
//! All two-qubit operators are ordered system ⊗ ancilla with rows
//! `|11⟩, |10⟩, |01⟩, |00⟩` (see [`basis`]).

pub mod basis;
pub mod daemonic;
pub mod ergotropy;
pub mod error;
pub mod matrix;
pub mod measurement;
pub mod nonlocal;
pub mod random;
pub mod state;
pub mod tol;

pub use daemonic::{
    daemonic_ergotropy, daemonic_gain, daemonic_geometric, local_work, nonselective_weak_work,
    selective_weak_work, super_ergotropy, Method, SuperErgotropy, WorkReport,
};
pub use ergotropy::{ergotropic_unitary, ergotropy, passive_energy, ErgotropyResult, Hamiltonian};
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, HermitianEigenSystem, Subsystem, C64};
pub use measurement::{MeasurementBranch, Outcome, ProjectorPair, Sign, WeakMeasurement};
pub use nonlocal::{
    classical_nonlocal_work, classical_total_work, nonlocal_report, nonlocal_work,
    quantum_correlation, total_ergotropy, NonlocalReport,
};
pub use state::{reduced_state, BellDiagonal, BlochTwoQubit, DensityMatrix};
