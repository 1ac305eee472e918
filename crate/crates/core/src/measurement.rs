//! Projective and weak measurements on the ancilla, and complete projective
//! measurements of the joint system.
//!
//! Weak operators follow `P(±x) = √b₀(±x) Π₀ + √b₁(±x) Π₁` with
//! `b₀(x) = (1 − tanh x)/2` and `b₁(x) = (1 + tanh x)/2`, so `P(+x) → Π₁`
//! and `P(−x) → Π₀` as `x → ∞`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::basis;
use crate::error::{Error, Result};
use crate::matrix::{pauli, ComplexMatrix, Subsystem};
use crate::state::DensityMatrix;
use crate::tol;

/// Orthogonal rank-one projectors on a qubit with `Π₀ + Π₁ = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorPair {
    pi0: ComplexMatrix,
    pi1: ComplexMatrix,
}

impl ProjectorPair {
    pub fn new(pi0: ComplexMatrix, pi1: ComplexMatrix) -> Result<Self> {
        for p in [&pi0, &pi1] {
            if p.dim() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    found: p.dim(),
                });
            }
            check_rank_one_projector(p)?;
        }
        let residual = pi0.multiply(&pi1)?.max_abs();
        if residual > tol::VALIDATION {
            return Err(Error::InvalidProjectors {
                reason: "projectors are not orthogonal",
                residual,
            });
        }
        let residual = (&pi0 + &pi1).max_abs_diff(&ComplexMatrix::identity(2));
        if residual > tol::VALIDATION {
            return Err(Error::InvalidProjectors {
                reason: "projectors do not sum to the identity",
                residual,
            });
        }
        Ok(Self { pi0, pi1 })
    }

    /// `Π₀ = |0⟩⟨0|`, `Π₁ = |1⟩⟨1|`.
    pub fn computational() -> Self {
        Self {
            pi0: basis::qubit_projector(0),
            pi1: basis::qubit_projector(1),
        }
    }

    /// `Π₁ = (I + n·σ)/2`, `Π₀ = (I − n·σ)/2` for a unit axis `n`.
    pub fn along(n: [f64; 3]) -> Result<Self> {
        let len = crate::state::norm3(&n);
        if (len - 1.0).abs() > tol::VALIDATION {
            return Err(Error::InvalidProjectors {
                reason: "measurement axis is not a unit vector",
                residual: (len - 1.0).abs(),
            });
        }
        let mut n_sigma = ComplexMatrix::zeros(2);
        for (k, s) in pauli::all().iter().enumerate() {
            n_sigma = &n_sigma + &s.scale_real(n[k]);
        }
        let id = ComplexMatrix::identity(2);
        Self::new(
            (&id - &n_sigma).scale_real(0.5),
            (&id + &n_sigma).scale_real(0.5),
        )
    }

    pub fn pi0(&self) -> &ComplexMatrix {
        &self.pi0
    }

    pub fn pi1(&self) -> &ComplexMatrix {
        &self.pi1
    }

    /// `Π_a` for outcome `a ∈ {0, 1}`.
    pub fn get(&self, a: u8) -> &ComplexMatrix {
        match a {
            0 => &self.pi0,
            1 => &self.pi1,
            _ => panic!("projector outcome must be 0 or 1"),
        }
    }
}

fn check_rank_one_projector(p: &ComplexMatrix) -> Result<()> {
    let residual = p.hermiticity_residual();
    if residual > tol::VALIDATION {
        return Err(Error::InvalidProjectors {
            reason: "projector is not Hermitian",
            residual,
        });
    }
    let residual = p.multiply(p)?.max_abs_diff(p);
    if residual > tol::VALIDATION {
        return Err(Error::InvalidProjectors {
            reason: "projector is not idempotent",
            residual,
        });
    }
    let residual = (p.trace().re - 1.0).abs();
    if residual > tol::VALIDATION {
        return Err(Error::InvalidProjectors {
            reason: "projector is not rank one",
            residual,
        });
    }
    Ok(())
}

/// Which weak operator was applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn apply(self, x: f64) -> f64 {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }

    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// `[b₀(y), b₁(y)]` for a signed strength `y`.
pub fn weak_weights(y: f64) -> [f64; 2] {
    let t = y.tanh();
    [(1.0 - t) / 2.0, (1.0 + t) / 2.0]
}

/// Two-outcome weak measurement of strength `x ≥ 0` built on a projector pair.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakMeasurement {
    x: f64,
    projectors: ProjectorPair,
}

impl WeakMeasurement {
    pub fn new(x: f64, projectors: ProjectorPair) -> Result<Self> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::InvalidStrength(x));
        }
        Ok(Self { x, projectors })
    }

    pub fn strength(&self) -> f64 {
        self.x
    }

    pub fn projectors(&self) -> &ProjectorPair {
        &self.projectors
    }

    /// `[b₀(±x), b₁(±x)]`.
    pub fn weights(&self, sign: Sign) -> [f64; 2] {
        weak_weights(sign.apply(self.x))
    }

    /// `P(±x)`.
    pub fn operator(&self, sign: Sign) -> ComplexMatrix {
        let [b0, b1] = self.weights(sign);
        &self.projectors.pi0.scale_real(b0.sqrt()) + &self.projectors.pi1.scale_real(b1.sqrt())
    }

    /// `E(±x) = P†(±x) P(±x)`.
    pub fn povm_element(&self, sign: Sign) -> ComplexMatrix {
        let [b0, b1] = self.weights(sign);
        &self.projectors.pi0.scale_real(b0) + &self.projectors.pi1.scale_real(b1)
    }
}

/// `(P(+x), P(−x))`.
pub fn weak_operators(w: &WeakMeasurement) -> (ComplexMatrix, ComplexMatrix) {
    (w.operator(Sign::Plus), w.operator(Sign::Minus))
}

/// `(E(+x), E(−x))`.
pub fn povm_elements(w: &WeakMeasurement) -> (ComplexMatrix, ComplexMatrix) {
    (w.povm_element(Sign::Plus), w.povm_element(Sign::Minus))
}

/// Label of a measurement outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    /// Ancilla projector `Π_a`.
    Projector(u8),
    /// Weak operator `P(±x)` on the ancilla.
    Weak(Sign),
    /// Index into a complete projector set on the joint system.
    Joint(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBranch {
    pub outcome: Outcome,
    pub probability: f64,
    /// `None` when the probability is below the zero-branch threshold.
    pub conditional_state: Option<DensityMatrix>,
}

impl MeasurementBranch {
    fn from_unnormalized(outcome: Outcome, unnormalized: &ComplexMatrix) -> Self {
        let probability = unnormalized.trace().re.max(0.0);
        let conditional_state = (probability > tol::ZERO_PROBABILITY)
            .then(|| DensityMatrix::from_positive(unnormalized));
        Self {
            outcome,
            probability,
            conditional_state,
        }
    }

    pub fn is_present(&self) -> bool {
        self.conditional_state.is_some()
    }
}

fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    Ok(())
}

/// `I ⊗ M`.
fn on_ancilla(m: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::identity(2).kron(m)
}

/// `Tr_A[(I⊗M) ρ (I⊗M)†]`, the unnormalized system state after applying `M` to the ancilla.
fn system_after_ancilla_op(rho: &DensityMatrix, m: &ComplexMatrix) -> ComplexMatrix {
    let k = on_ancilla(m);
    (&(&k * rho.matrix()) * &k.adjoint()).partial_trace_dims(2, 2, Subsystem::System)
}

/// Projective measurement `{Π₀, Π₁}` on the ancilla; index `a` holds outcome `a`.
pub fn project_ancilla(rho: &DensityMatrix, p: &ProjectorPair) -> Result<[MeasurementBranch; 2]> {
    require_two_qubit(rho)?;
    Ok([0u8, 1].map(|a| {
        MeasurementBranch::from_unnormalized(
            Outcome::Projector(a),
            &system_after_ancilla_op(rho, p.get(a)),
        )
    }))
}

/// Selective weak outcome `P(±x)` on the ancilla, assembled from the projective branches:
/// `p± = Σₐ bₐ(±x) pₐ` and `ρ_{S|±} = Σₐ bₐ(±x) pₐ ρ_{S|a} / p±`.
pub fn weak_branch(rho: &DensityMatrix, w: &WeakMeasurement, sign: Sign) -> Result<MeasurementBranch> {
    require_two_qubit(rho)?;
    let weights = w.weights(sign);
    let mut acc = ComplexMatrix::zeros(2);
    for a in [0u8, 1] {
        let part = system_after_ancilla_op(rho, w.projectors.get(a));
        acc = &acc + &part.scale_real(weights[a as usize]);
    }
    Ok(MeasurementBranch::from_unnormalized(Outcome::Weak(sign), &acc))
}

/// Same outcome computed directly as `Tr_A[(I⊗P) ρ (I⊗P†)] / p`.
pub fn weak_branch_direct(
    rho: &DensityMatrix,
    w: &WeakMeasurement,
    sign: Sign,
) -> Result<MeasurementBranch> {
    require_two_qubit(rho)?;
    Ok(MeasurementBranch::from_unnormalized(
        Outcome::Weak(sign),
        &system_after_ancilla_op(rho, &w.operator(sign)),
    ))
}

/// `|11⟩⟨11|, |10⟩⟨10|, |01⟩⟨01|, |00⟩⟨00|`.
pub fn computational_joint_projectors() -> Vec<ComplexMatrix> {
    basis::PAIR_LABELS
        .iter()
        .map(|&(s, a)| basis::pair_projector(s, a))
        .collect()
}

/// Complete rank-one projective measurement of the joint state.
pub fn measure_total(rho: &DensityMatrix, projectors: &[ComplexMatrix]) -> Result<Vec<MeasurementBranch>> {
    require_two_qubit(rho)?;
    if projectors.len() != rho.dim() {
        return Err(Error::InvalidProjectors {
            reason: "need one rank-one projector per basis state",
            residual: (rho.dim() as f64 - projectors.len() as f64).abs(),
        });
    }
    let mut sum = ComplexMatrix::zeros(rho.dim());
    for (i, p) in projectors.iter().enumerate() {
        if p.dim() != rho.dim() {
            return Err(Error::DimensionMismatch {
                expected: rho.dim(),
                found: p.dim(),
            });
        }
        check_rank_one_projector(p)?;
        for q in &projectors[i + 1..] {
            let residual = p.multiply(q)?.max_abs();
            if residual > tol::VALIDATION {
                return Err(Error::InvalidProjectors {
                    reason: "projectors are not orthogonal",
                    residual,
                });
            }
        }
        sum = &sum + p;
    }
    let residual = sum.max_abs_diff(&ComplexMatrix::identity(rho.dim()));
    if residual > tol::VALIDATION {
        return Err(Error::InvalidProjectors {
            reason: "projectors do not sum to the identity",
            residual,
        });
    }
    Ok(projectors
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let unnormalized = &(p * rho.matrix()) * p;
            MeasurementBranch::from_unnormalized(Outcome::Joint(k), &unnormalized)
        })
        .collect())
}
