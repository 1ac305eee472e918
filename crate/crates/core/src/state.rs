//! Density matrices, the two-qubit Bloch form and the Bell-diagonal family.

use serde::{Deserialize, Serialize};

use crate::basis;
use crate::error::{Error, Result};
use crate::matrix::{pauli, ComplexMatrix, Subsystem, C64, ZERO};
use crate::tol;

/// A validated quantum state: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates `m`, reporting the first violated invariant with its residual.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let residual = m.hermiticity_residual();
        if residual > tol::VALIDATION {
            return Err(Error::NotHermitian { residual });
        }
        let trace = m.trace();
        let residual = (trace - C64::new(1.0, 0.0)).norm();
        if residual > tol::VALIDATION {
            return Err(Error::TraceNotOne {
                trace: trace.re,
                residual,
            });
        }
        let eig = m.eig_hermitian()?;
        let smallest = eig.eigenvalues[0];
        if smallest < -tol::VALIDATION {
            return Err(Error::NegativeEigenvalue {
                eigenvalue: smallest,
            });
        }
        Ok(Self { matrix: m })
    }

    /// Normalizes an unnormalized positive operator by its trace.
    ///
    /// Only for operators that are positive by construction (conditional
    /// states, conjugated states); no eigenvalue check is made.
    pub(crate) fn from_positive(m: &ComplexMatrix) -> Self {
        let trace = m.trace().re;
        Self {
            matrix: m.hermitian_part().scale_real(1.0 / trace),
        }
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) nonzero vector.
    pub fn pure(ket: &[C64]) -> Result<Self> {
        let norm_sqr: f64 = ket.iter().map(|z| z.norm_sqr()).sum();
        let scaled: Vec<C64> = ket.iter().map(|z| z / norm_sqr.sqrt()).collect();
        Self::new(ComplexMatrix::projector(&scaled))
    }

    /// `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `Re Tr[ρ O]` for a Hermitian observable `O`.
    pub fn expectation(&self, observable: &ComplexMatrix) -> Result<f64> {
        Ok(self.matrix.multiply(observable)?.trace().re)
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.matrix
            .eig_hermitian()
            .expect("validated density matrix is Hermitian")
            .eigenvalues
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    /// Bloch vector `(Tr[ρσ_x], Tr[ρσ_y], Tr[ρσ_z])` of a qubit state.
    pub fn bloch_vector(&self) -> Result<[f64; 3]> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.dim(),
            });
        }
        let [x, y, z] = pauli::all();
        Ok([
            self.expectation(&x)?,
            self.expectation(&y)?,
            self.expectation(&z)?,
        ])
    }

    /// `(I + n·σ)/2`.
    pub fn from_bloch_vector(n: [f64; 3]) -> Result<Self> {
        let norm = norm3(&n);
        if norm > 1.0 + tol::VALIDATION {
            return Err(Error::BlochVectorTooLong { name: "n", norm });
        }
        let mut m = ComplexMatrix::identity(2);
        for (k, sigma) in pauli::all().iter().enumerate() {
            m = &m + &sigma.scale_real(n[k]);
        }
        Self::new(m.scale_real(0.5))
    }
}

/// Partial trace of a two-qubit state, keeping `keep`.
pub fn reduced_state(rho: &DensityMatrix, keep: Subsystem) -> Result<DensityMatrix> {
    let m = rho.matrix().partial_trace(keep)?;
    DensityMatrix::new(m)
}

pub(crate) fn norm3(v: &[f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Two-qubit state in the Pauli expansion
/// `ρ = (I + Σ sᵢ σᵢ⊗I + Σ rⱼ I⊗σⱼ + Σ tᵢⱼ σᵢ⊗σⱼ) / 4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochTwoQubit {
    /// System Bloch vector.
    pub s: [f64; 3],
    /// Ancilla Bloch vector.
    pub r: [f64; 3],
    /// Correlation matrix `t[i][j] = Tr[ρ σᵢ⊗σⱼ]`.
    pub t: [[f64; 3]; 3],
}

impl BlochTwoQubit {
    /// Checks the local vectors and that the reconstructed matrix is a state.
    pub fn new(s: [f64; 3], r: [f64; 3], t: [[f64; 3]; 3]) -> Result<Self> {
        let b = Self { s, r, t };
        b.check()?;
        Ok(b)
    }

    fn check(&self) -> Result<()> {
        for (name, v) in [("s", &self.s), ("r", &self.r)] {
            let norm = norm3(v);
            if norm > 1.0 + tol::VALIDATION {
                return Err(Error::BlochVectorTooLong { name, norm });
            }
        }
        if let Some(row) = self.t.iter().position(|row| row.iter().any(|x| !x.is_finite())) {
            return Err(Error::NonFinite { row, col: 0 });
        }
        self.to_density().map(|_| ())
    }

    fn expansion(&self) -> ComplexMatrix {
        let id = ComplexMatrix::identity(2);
        let sigma = pauli::all();
        let mut m = ComplexMatrix::identity(4);
        for i in 0..3 {
            m = &m + &sigma[i].kron(&id).scale_real(self.s[i]);
            m = &m + &id.kron(&sigma[i]).scale_real(self.r[i]);
            for j in 0..3 {
                m = &m + &sigma[i].kron(&sigma[j]).scale_real(self.t[i][j]);
            }
        }
        m.scale_real(0.25)
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.expansion())
    }

    /// Pauli expectations of a two-qubit state.
    pub fn from_density(rho: &DensityMatrix) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: rho.dim(),
            });
        }
        let id = ComplexMatrix::identity(2);
        let sigma = pauli::all();
        let mut b = Self {
            s: [0.0; 3],
            r: [0.0; 3],
            t: [[0.0; 3]; 3],
        };
        for i in 0..3 {
            b.s[i] = rho.expectation(&sigma[i].kron(&id))?;
            b.r[i] = rho.expectation(&id.kron(&sigma[i]))?;
            for j in 0..3 {
                b.t[i][j] = rho.expectation(&sigma[i].kron(&sigma[j]))?;
            }
        }
        Ok(b)
    }

    /// Third column of the correlation matrix, `(t₁₃, t₂₃, t₃₃)`.
    pub fn t_column3(&self) -> [f64; 3] {
        [self.t[0][2], self.t[1][2], self.t[2][2]]
    }
}

/// Bell-diagonal parameters `(c₁, c₂, c₃)` of `ρ = (I + Σ cᵢ σᵢ⊗σᵢ)/4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellDiagonal {
    pub c: [f64; 3],
}

impl BellDiagonal {
    pub fn new(c: [f64; 3]) -> Result<Self> {
        for (k, &value) in c.iter().enumerate() {
            if !value.is_finite() || value.abs() > 1.0 + tol::BELL_POSITIVITY {
                return Err(Error::CoefficientOutOfRange {
                    index: k + 1,
                    value,
                });
            }
        }
        let p = Self { c };
        let smallest = p.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if smallest < -tol::BELL_POSITIVITY {
            return Err(Error::NonPhysicalBellDiagonal {
                eigenvalue: smallest,
            });
        }
        Ok(p)
    }

    /// True when `c` describes a state, without constructing it.
    pub fn is_physical(c: [f64; 3]) -> bool {
        Self::new(c).is_ok()
    }

    /// The four eigenvalues `λ₀..λ₃`, each normalized by 4 so they sum to one.
    ///
    /// Ordered as `(1−c₁−c₂−c₃, 1−c₁+c₂+c₃, 1+c₁−c₂+c₃, 1+c₁+c₂−c₃)/4`.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let [c1, c2, c3] = self.c;
        [
            (1.0 - c1 - c2 - c3) / 4.0,
            (1.0 - c1 + c2 + c3) / 4.0,
            (1.0 + c1 - c2 + c3) / 4.0,
            (1.0 + c1 + c2 - c3) / 4.0,
        ]
    }

    /// Bell vectors matching [`Self::eigenvalues`]:
    /// `(|10⟩−|01⟩)/√2, (|00⟩−|11⟩)/√2, (|00⟩+|11⟩)/√2, (|10⟩+|01⟩)/√2`.
    pub fn eigenvectors() -> [Vec<C64>; 4] {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let combo = |a: (u8, u8), b: (u8, u8), sign: f64| {
            let mut v = vec![ZERO; 4];
            v[basis::pair_index(a.0, a.1)] += C64::new(h, 0.0);
            v[basis::pair_index(b.0, b.1)] += C64::new(sign * h, 0.0);
            v
        };
        [
            combo((1, 0), (0, 1), -1.0),
            combo((0, 0), (1, 1), -1.0),
            combo((0, 0), (1, 1), 1.0),
            combo((1, 0), (0, 1), 1.0),
        ]
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        let sigma = pauli::all();
        let mut m = ComplexMatrix::identity(4);
        for (i, s) in sigma.iter().enumerate() {
            m = &m + &s.kron(s).scale_real(self.c[i]);
        }
        DensityMatrix::new(m.scale_real(0.25))
    }

    pub fn to_bloch(&self) -> BlochTwoQubit {
        let [c1, c2, c3] = self.c;
        BlochTwoQubit {
            s: [0.0; 3],
            r: [0.0; 3],
            t: [[c1, 0.0, 0.0], [0.0, c2, 0.0], [0.0, 0.0, c3]],
        }
    }

    /// `max |cᵢ|`.
    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }
}

/// The example states used for the selective-measurement discussion.
pub mod named {
    use super::*;

    /// `(|11⟩⟨11| + |10⟩⟨10| + |01⟩⟨01|)/3`.
    pub fn third_mixture() -> DensityMatrix {
        let mut m = ComplexMatrix::zeros(4);
        for (s, a) in [(1, 1), (1, 0), (0, 1)] {
            m = &m + &basis::pair_projector(s, a);
        }
        DensityMatrix::new(m.scale_real(1.0 / 3.0)).expect("third mixture is a state")
    }

    /// `cos θ |00⟩ + sin θ |11⟩`.
    pub fn psi_theta(theta: f64) -> DensityMatrix {
        let mut v = vec![ZERO; 4];
        v[basis::pair_index(0, 0)] = C64::new(theta.cos(), 0.0);
        v[basis::pair_index(1, 1)] = C64::new(theta.sin(), 0.0);
        DensityMatrix::pure(&v).expect("unit vector")
    }

    /// `(|11⟩ + |10⟩ + |01⟩)/√3`.
    pub fn phi_w() -> DensityMatrix {
        let mut v = vec![ZERO; 4];
        for (s, a) in [(1, 1), (1, 0), (0, 1)] {
            v[basis::pair_index(s, a)] = C64::new(1.0, 0.0);
        }
        DensityMatrix::pure(&v).expect("nonzero vector")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn validate_accepts_simple_states() {
        assert!(DensityMatrix::new(ComplexMatrix::identity(2).scale_real(0.5)).is_ok());
        assert!(DensityMatrix::new(ComplexMatrix::real_diag(&[0.7, 0.3])).is_ok());
    }

    #[test]
    fn validate_reports_violations() {
        let err = DensityMatrix::new(ComplexMatrix::real_diag(&[1.2, -0.2])).unwrap_err();
        match err {
            Error::NegativeEigenvalue { eigenvalue } => assert!((eigenvalue + 0.2).abs() < 1e-14),
            other => panic!("unexpected {other:?}"),
        }
        let err = DensityMatrix::new(ComplexMatrix::real_diag(&[0.5, 0.4])).unwrap_err();
        assert!(matches!(err, Error::TraceNotOne { .. }));
        let skew = ComplexMatrix::from_real_rows(&[&[0.5, 0.1], &[0.0, 0.5]]).unwrap();
        assert!(matches!(
            DensityMatrix::new(skew),
            Err(Error::NotHermitian { residual }) if (residual - 0.1).abs() < 1e-15
        ));
    }

    #[test]
    fn from_bloch_examples() {
        let zero = BlochTwoQubit::new([0.0; 3], [0.0; 3], [[0.0; 3]; 3]).unwrap();
        let rho = zero.to_density().unwrap();
        assert!(rho.matrix().max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.25)) < 1e-15);

        let b = BlochTwoQubit::new([0.0, 0.0, 1.0], [0.0; 3], [[0.0; 3]; 3]).unwrap();
        let expected = basis::qubit_projector(1).kron(&ComplexMatrix::identity(2).scale_real(0.5));
        assert!(b.to_density().unwrap().matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn bloch_rejects_long_vectors_and_nonphysical() {
        assert!(matches!(
            BlochTwoQubit::new([0.0, 0.0, 1.1], [0.0; 3], [[0.0; 3]; 3]),
            Err(Error::BlochVectorTooLong { name: "s", .. })
        ));
        // |s|, |r| fine but no correlation can support s = r = (0,0,1), t33 = -1
        let t = [[0.0; 3], [0.0; 3], [0.0, 0.0, -1.0]];
        assert!(matches!(
            BlochTwoQubit::new([0.0, 0.0, 1.0], [0.0, 0.0, 1.0], t),
            Err(Error::NegativeEigenvalue { .. })
        ));
    }

    #[test]
    fn to_bloch_of_excited_pair() {
        let rho = DensityMatrix::pure(&basis::pair_ket(1, 1)).unwrap();
        let b = BlochTwoQubit::from_density(&rho).unwrap();
        assert_eq!(b.s, [0.0, 0.0, 1.0]);
        assert_eq!(b.r, [0.0, 0.0, 1.0]);
        assert_eq!(b.t, [[0.0; 3], [0.0; 3], [0.0, 0.0, 1.0]]);
    }

    #[test]
    fn to_bloch_rejects_qubit() {
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(BlochTwoQubit::from_density(&rho).is_err());
    }

    #[test]
    fn bell_diagonal_matches_bloch_special_case() {
        let p = BellDiagonal::new([0.5, -0.5, 0.3]).unwrap();
        let a = p.to_density().unwrap();
        let b = p.to_bloch().to_density().unwrap();
        assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-15);
        let back = BlochTwoQubit::from_density(&BellDiagonal::new([0.5, -0.5, 0.0]).unwrap().to_density().unwrap())
            .unwrap();
        assert!(back.s.iter().chain(back.r.iter()).all(|x| x.abs() < 1e-15));
        assert!((back.t[0][0] - 0.5).abs() < 1e-15 && (back.t[1][1] + 0.5).abs() < 1e-15);
    }

    #[test]
    fn bell_diagonal_spectra() {
        let p = BellDiagonal::new([0.0; 3]).unwrap();
        assert!(p
            .to_density()
            .unwrap()
            .matrix()
            .max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.25))
            < 1e-15);

        // c = (1, -1, 1): λ = (0, 0, 4, 0)/4
        let p = BellDiagonal::new([1.0, -1.0, 1.0]).unwrap();
        let ev = p.to_density().unwrap().eigenvalues();
        assert_eq!(p.eigenvalues(), [0.0, 0.0, 1.0, 0.0]);
        assert!((ev[3] - 1.0).abs() < 1e-12 && ev[..3].iter().all(|x| x.abs() < 1e-12));

        // c = (1/2, -1/2, 1): λ = (0, 1, 3, 0)/4
        let p = BellDiagonal::new([0.5, -0.5, 1.0]).unwrap();
        assert_eq!(p.eigenvalues(), [0.0, 0.25, 0.75, 0.0]);
        let ev = p.to_density().unwrap().eigenvalues();
        for (got, want) in ev.iter().zip([0.0, 0.0, 0.25, 0.75]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn bell_vectors_diagonalize() {
        let p = BellDiagonal::new([0.3, -0.2, 0.1]).unwrap();
        let rho = p.to_density().unwrap();
        for (v, lambda) in BellDiagonal::eigenvectors().iter().zip(p.eigenvalues()) {
            let mv: Vec<C64> = (0..4)
                .map(|i| (0..4).map(|j| rho.matrix().get(i, j) * v[j]).sum())
                .collect();
            for i in 0..4 {
                assert!((mv[i] - v[i] * lambda).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn bell_diagonal_rejects_nonphysical() {
        assert!(matches!(
            BellDiagonal::new([1.0, 1.0, 1.0]),
            Err(Error::NonPhysicalBellDiagonal { .. })
        ));
        assert!(matches!(
            BellDiagonal::new([1.5, 0.0, 0.0]),
            Err(Error::CoefficientOutOfRange { index: 1, .. })
        ));
    }

    #[test]
    fn reduced_states() {
        let bell = BellDiagonal::new([0.5, -0.5, 0.7]).unwrap().to_density().unwrap();
        let half = DensityMatrix::maximally_mixed(2);
        for keep in [Subsystem::System, Subsystem::Ancilla] {
            let red = reduced_state(&bell, keep).unwrap();
            assert!(red.matrix().max_abs_diff(half.matrix()) < 1e-15);
        }

        let rho_s = DensityMatrix::new(ComplexMatrix::from_real_rows(&[&[0.6, 0.1], &[0.1, 0.4]]).unwrap()).unwrap();
        let rho_a = DensityMatrix::new(ComplexMatrix::real_diag(&[0.9, 0.1])).unwrap();
        let red = reduced_state(&rho_s.kron(&rho_a), Subsystem::System).unwrap();
        assert!(red.matrix().max_abs_diff(rho_s.matrix()) < 1e-15);

        let b = BlochTwoQubit::new([0.0, 0.0, 1.0], [0.0; 3], [[0.0; 3]; 3]).unwrap();
        let red = reduced_state(&b.to_density().unwrap(), Subsystem::System).unwrap();
        assert!(red.matrix().max_abs_diff(&basis::qubit_projector(1)) < 1e-15);
    }

    #[test]
    fn qubit_bloch_vector_round_trip() {
        let rho = DensityMatrix::from_bloch_vector([0.3, -0.4, 0.5]).unwrap();
        let n = rho.bloch_vector().unwrap();
        assert!((n[0] - 0.3).abs() < 1e-15 && (n[1] + 0.4).abs() < 1e-15 && (n[2] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn named_states() {
        let m = named::third_mixture();
        assert!((m.purity() - 1.0 / 3.0).abs() < 1e-15);
        let phi = named::phi_w();
        assert!((phi.purity() - 1.0).abs() < 1e-14);
        let psi = named::psi_theta(0.3);
        assert!((psi.matrix().get(basis::pair_index(0, 0), basis::pair_index(1, 1)) - c(0.3f64.cos() * 0.3f64.sin())).norm() < 1e-15);
    }
}
