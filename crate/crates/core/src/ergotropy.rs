//! Passive energy, ergotropy and the ergotropic unitary.
//!
//! The ergotropy of `ρ` with respect to `H = Σ εₖ|εₖ⟩⟨εₖ|` is
//! `Tr[ρH] − Σₖ rₖ εₖ`, pairing the state's eigenvalues in descending order
//! with the energies in ascending order. The unitary `Σₖ |εₖ⟩⟨rₖ|` reaches
//! that minimum.

use crate::basis;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::state::DensityMatrix;
use crate::tol;

/// Energy spectrum (ascending) with its orthonormal eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    energies: Vec<f64>,
    basis: ComplexMatrix,
}

impl Hamiltonian {
    /// Nondegenerate spectrum in the computational basis.
    pub fn new(energies: Vec<f64>) -> Result<Self> {
        let basis = ComplexMatrix::identity(energies.len().max(1));
        Self::with_basis(energies, basis)
    }

    /// Nondegenerate spectrum; columns of `basis` are the eigenvectors.
    pub fn with_basis(energies: Vec<f64>, basis: ComplexMatrix) -> Result<Self> {
        Self::build(energies, basis, true)
    }

    /// Spectrum that may repeat levels, e.g. `H_S ⊗ I`.
    pub fn degenerate(energies: Vec<f64>, basis: ComplexMatrix) -> Result<Self> {
        Self::build(energies, basis, false)
    }

    fn build(energies: Vec<f64>, basis: ComplexMatrix, strict: bool) -> Result<Self> {
        if energies.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        if basis.dim() != energies.len() {
            return Err(Error::DimensionMismatch {
                expected: energies.len(),
                found: basis.dim(),
            });
        }
        for (index, e) in energies.iter().enumerate() {
            if !e.is_finite() {
                return Err(Error::NonFinite { row: index, col: index });
            }
        }
        for (index, w) in energies.windows(2).enumerate() {
            let ok = if strict { w[0] < w[1] } else { w[0] <= w[1] };
            if !ok {
                return Err(Error::EnergiesNotAscending {
                    index: index + 1,
                    previous: w[0],
                    value: w[1],
                });
            }
        }
        let residual = basis.unitarity_residual();
        if residual > tol::VALIDATION {
            return Err(Error::BasisNotUnitary { residual });
        }
        Ok(Self { energies, basis })
    }

    /// Qubit `ε₀|0⟩⟨0| + ε₁|1⟩⟨1|` with `ε₀ < ε₁`, in the crate's `|1⟩, |0⟩` row order.
    pub fn qubit(e0: f64, e1: f64) -> Result<Self> {
        let columns = vec![basis::qubit_ket(0), basis::qubit_ket(1)];
        Self::with_basis(vec![e0, e1], ComplexMatrix::from_columns(&columns)?)
    }

    /// The default qubit with `ε₀ = 0`, `ε₁ = Δε`.
    pub fn qubit_gap(delta_eps: f64) -> Result<Self> {
        if delta_eps.is_nan() || delta_eps <= 0.0 || delta_eps.is_infinite() {
            return Err(Error::InvalidLevelSpacing(delta_eps));
        }
        Self::qubit(0.0, delta_eps)
    }

    /// `H ⊗ I` on system ⊗ ancilla; the ancilla carries no energy.
    pub fn joint_with_idle_ancilla(&self) -> Self {
        let d = 2;
        let energies: Vec<f64> = self
            .energies
            .iter()
            .flat_map(|&e| std::iter::repeat_n(e, d))
            .collect();
        let basis = self.basis.kron(&ComplexMatrix::identity(d));
        Self { energies, basis }
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }

    /// Highest minus lowest level.
    pub fn spread(&self) -> f64 {
        self.energies[self.energies.len() - 1] - self.energies[0]
    }

    /// `Σ εₖ |εₖ⟩⟨εₖ|`.
    pub fn matrix(&self) -> ComplexMatrix {
        let diag = ComplexMatrix::real_diag(&self.energies);
        &(&self.basis * &diag) * &self.basis.adjoint()
    }

    /// Same eigenbasis, energies multiplied by `k > 0`.
    pub fn scaled(&self, k: f64) -> Self {
        Self {
            energies: self.energies.iter().map(|e| e * k).collect(),
            basis: self.basis.clone(),
        }
    }

    /// Same spectrum with eigenbasis `V · basis`.
    pub fn rotated(&self, v: &ComplexMatrix) -> Result<Self> {
        Self::build(self.energies.clone(), v.multiply(&self.basis)?, false)
    }

    /// `Tr[ρH]`.
    pub fn energy(&self, rho: &DensityMatrix) -> Result<f64> {
        self.check_dim(rho)?;
        rho.expectation(&self.matrix())
    }

    fn check_dim(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rho.dim(),
            });
        }
        Ok(())
    }
}

/// Work extracted by the optimal cyclic unitary, with the transformation itself.
#[derive(Debug, Clone, PartialEq)]
pub struct ErgotropyResult {
    pub work: f64,
    pub initial_energy: f64,
    pub passive_energy: f64,
    pub unitary: ComplexMatrix,
    pub passive_state: DensityMatrix,
}

/// Lowest energy reachable from `rho` by a unitary: `Σ r↓ₖ ε↑ₖ`.
pub fn passive_energy(rho: &DensityMatrix, h: &Hamiltonian) -> Result<f64> {
    h.check_dim(rho)?;
    let eig = rho.matrix().eig_hermitian()?;
    Ok(eig
        .eigenvalues
        .iter()
        .rev()
        .zip(h.energies())
        .map(|(r, e)| r * e)
        .sum())
}

/// `Σₖ |εₖ⟩⟨rₖ|` with state eigenvectors in descending eigenvalue order.
pub fn ergotropic_unitary(rho: &DensityMatrix, h: &Hamiltonian) -> Result<ComplexMatrix> {
    h.check_dim(rho)?;
    let eig = rho.matrix().eig_hermitian()?;
    let n = h.dim();
    let descending: Vec<_> = (0..n).rev().map(|k| eig.eigenvector(k)).collect();
    let v_desc = ComplexMatrix::from_columns(&descending)?;
    h.basis().multiply(&v_desc.adjoint())
}

pub fn ergotropy(rho: &DensityMatrix, h: &Hamiltonian) -> Result<ErgotropyResult> {
    let initial_energy = h.energy(rho)?;
    let passive = passive_energy(rho, h)?;
    let unitary = ergotropic_unitary(rho, h)?;
    let passive_state = DensityMatrix::from_positive(&rho.matrix().conjugate_by(&unitary)?);
    Ok(ErgotropyResult {
        // rounding can leave a passive state a few ulps below zero
        work: (initial_energy - passive).max(0.0),
        initial_energy,
        passive_energy: passive,
        unitary,
        passive_state,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{qubit_ket, qubit_projector};

    fn h01() -> Hamiltonian {
        Hamiltonian::qubit(0.0, 1.0).unwrap()
    }

    fn diag01(p0: f64, p1: f64) -> DensityMatrix {
        let m = &qubit_projector(0).scale_real(p0) + &qubit_projector(1).scale_real(p1);
        DensityMatrix::new(m).unwrap()
    }

    #[test]
    fn qubit_hamiltonian_puts_one_above_zero() {
        let h = h01();
        assert!((h.energy(&diag01(0.0, 1.0)).unwrap() - 1.0).abs() < 1e-15);
        assert!(h.energy(&diag01(1.0, 0.0)).unwrap().abs() < 1e-15);
    }

    #[test]
    fn passive_energy_examples() {
        let h = h01();
        assert_eq!(passive_energy(&diag01(1.0, 0.0), &h).unwrap(), 0.0);
        assert_eq!(passive_energy(&diag01(0.0, 1.0), &h).unwrap(), 0.0);
        assert!((passive_energy(&diag01(0.3, 0.7), &h).unwrap() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn ergotropy_examples() {
        let h = h01();
        assert_eq!(ergotropy(&diag01(1.0, 0.0), &h).unwrap().work, 0.0);
        assert!((ergotropy(&diag01(0.0, 1.0), &h).unwrap().work - 1.0).abs() < 1e-15);
        assert!((ergotropy(&diag01(0.3, 0.7), &h).unwrap().work - 0.4).abs() < 1e-15);
    }

    #[test]
    fn excited_state_unitary_swaps_levels() {
        let h = h01();
        let u = ergotropic_unitary(&diag01(0.0, 1.0), &h).unwrap();
        let image: Vec<_> = (0..2)
            .map(|i| (0..2).map(|j| u.get(i, j) * qubit_ket(1)[j]).sum::<crate::C64>())
            .collect();
        let overlap: f64 = image.iter().zip(qubit_ket(0)).map(|(a, b)| (a * b).norm()).sum();
        assert!((overlap - 1.0).abs() < 1e-14);
    }

    #[test]
    fn passive_state_keeps_energy() {
        let h = h01();
        let rho = diag01(0.3, 0.7);
        let before = h.energy(&rho).unwrap();
        let res = ergotropy(&diag01(0.7, 0.3), &h).unwrap();
        assert_eq!(res.work, 0.0);
        let u = res.unitary;
        let after = h.energy(&DensityMatrix::new(diag01(0.7, 0.3).matrix().conjugate_by(&u).unwrap()).unwrap()).unwrap();
        assert!((after - 0.3).abs() < 1e-15);
        assert!((before - 0.7).abs() < 1e-15);
    }

    #[test]
    fn hamiltonian_validation() {
        assert!(matches!(
            Hamiltonian::new(vec![0.0, 0.0]),
            Err(Error::EnergiesNotAscending { index: 1, .. })
        ));
        assert!(matches!(
            Hamiltonian::new(vec![1.0, 0.0]),
            Err(Error::EnergiesNotAscending { .. })
        ));
        let skew = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(
            Hamiltonian::with_basis(vec![0.0, 1.0], skew),
            Err(Error::BasisNotUnitary { .. })
        ));
        assert!(Hamiltonian::degenerate(vec![0.0, 0.0], ComplexMatrix::identity(2)).is_ok());
        assert!(matches!(Hamiltonian::qubit_gap(0.0), Err(Error::InvalidLevelSpacing(_))));
    }

    #[test]
    fn dimension_mismatch() {
        let rho = DensityMatrix::maximally_mixed(4);
        assert!(matches!(
            ergotropy(&rho, &h01()),
            Err(Error::DimensionMismatch { expected: 2, found: 4 })
        ));
    }

    #[test]
    fn joint_hamiltonian_levels() {
        let hj = h01().joint_with_idle_ancilla();
        assert_eq!(hj.energies(), &[0.0, 0.0, 1.0, 1.0]);
        // |1a⟩ rows carry energy 1
        assert_eq!(hj.matrix(), ComplexMatrix::real_diag(&[1.0, 1.0, 0.0, 0.0]));
    }
}
