//! Total, local and non-local work of a system–ancilla pair, and the
//! Bell-diagonal correlation measure.

use serde::{Deserialize, Serialize};

use crate::daemonic::local_work;
use crate::ergotropy::{ergotropy, passive_energy, ErgotropyResult, Hamiltonian};
use crate::error::{Error, Result};
use crate::measurement::{computational_joint_projectors, measure_total};
use crate::state::{BellDiagonal, DensityMatrix};

/// Ergotropy of the joint state under `h_joint` (typically `H_S ⊗ I`).
pub fn total_ergotropy(rho: &DensityMatrix, h_joint: &Hamiltonian) -> Result<ErgotropyResult> {
    ergotropy(rho, h_joint)
}

/// Average ergotropy after measuring the joint state in the computational basis,
/// enumerating every outcome.
pub fn classical_total_work(rho: &DensityMatrix, h_joint: &Hamiltonian) -> Result<f64> {
    let initial = h_joint.energy(rho)?;
    let mut averaged = 0.0;
    for branch in measure_total(rho, &computational_joint_projectors())? {
        if let Some(state) = &branch.conditional_state {
            averaged += branch.probability * passive_energy(state, h_joint)?;
        }
    }
    Ok(initial - averaged)
}

/// Classical total work minus local work.
pub fn classical_nonlocal_work(rho: &DensityMatrix, h_s: &Hamiltonian) -> Result<f64> {
    let h_joint = h_s.joint_with_idle_ancilla();
    Ok(classical_total_work(rho, &h_joint)? - local_work(rho, h_s)?)
}

/// Total ergotropy minus local work.
pub fn nonlocal_work(rho: &DensityMatrix, h_s: &Hamiltonian) -> Result<f64> {
    let h_joint = h_s.joint_with_idle_ancilla();
    Ok(total_ergotropy(rho, &h_joint)?.work - local_work(rho, h_s)?)
}

/// `√(2 − √(4 − (c₁²c₂² + c₁²c₃² + c₂²c₃²)))`.
pub fn quantum_correlation(p: &BellDiagonal) -> f64 {
    let [a, b, c] = p.c.map(|x| x * x);
    let inner = (4.0 - (a * b + a * c + b * c)).max(0.0).sqrt();
    (2.0 - inner).max(0.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonlocalReport {
    pub total_work: f64,
    pub classical_total_work: f64,
    pub local_work: f64,
    pub nonlocal_work: f64,
    pub classical_nonlocal_work: f64,
    /// Only for Bell-diagonal inputs.
    pub correlation: Option<f64>,
}

/// All total/local/non-local quantities for a two-qubit state and system Hamiltonian.
pub fn nonlocal_report(rho: &DensityMatrix, h_s: &Hamiltonian) -> Result<NonlocalReport> {
    if h_s.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: h_s.dim(),
        });
    }
    let h_joint = h_s.joint_with_idle_ancilla();
    let total_work = total_ergotropy(rho, &h_joint)?.work;
    let classical_total = classical_total_work(rho, &h_joint)?;
    let local = local_work(rho, h_s)?;
    Ok(NonlocalReport {
        total_work,
        classical_total_work: classical_total,
        local_work: local,
        nonlocal_work: total_work - local,
        classical_nonlocal_work: classical_total - local,
        correlation: None,
    })
}

/// [`nonlocal_report`] for a Bell-diagonal state, including the correlation measure.
pub fn bell_diagonal_report(p: &BellDiagonal, h_s: &Hamiltonian) -> Result<NonlocalReport> {
    let mut report = nonlocal_report(&p.to_density()?, h_s)?;
    report.correlation = Some(quantum_correlation(p));
    Ok(report)
}
