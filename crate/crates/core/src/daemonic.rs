//! Measurement-assisted work extraction from a system correlated with an ancilla.
//!
//! Every quantity here is built from the two projective components
//! `(pₐ, ρ_{S|a})` of a measurement `{Π₀, Π₁}` on the ancilla and the final
//! energy `Fₐ = Tr[Uₐ ρ_{S|a} Uₐ† H]` reached by each component's ergotropic
//! unitary `Uₐ`. The methods differ only in how the components are weighted:
//!
//! | method             | weight of component `a`                 |
//! |--------------------|-----------------------------------------|
//! | daemonic           | `pₐ`                                    |
//! | weak non-selective | `Σ_{y=±x} bₐ(y) pₐ`                     |
//! | weak selective ±   | `bₐ(±x) pₐ / p±`                         |
//!
//! and the work is `Tr[ρ_S H] − Σₐ weightₐ Fₐ`.

use serde::{Deserialize, Serialize};

use crate::ergotropy::{ergotropic_unitary, ergotropy, passive_energy, Hamiltonian};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Subsystem};
use crate::measurement::{
    project_ancilla, weak_branch, weak_weights, MeasurementBranch, Outcome, ProjectorPair, Sign,
    WeakMeasurement,
};
use crate::state::{norm3, reduced_state, BlochTwoQubit, DensityMatrix};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum Method {
    Plain,
    Daemonic,
    WeakNonselective { x: f64 },
    WeakSelective { x: f64, sign: Sign },
}

/// One projective component of the ancilla measurement and its share of the work.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchWork {
    pub outcome: Outcome,
    pub probability: f64,
    /// Weight of this component's final energy under the report's method.
    pub weight: f64,
    pub conditional_state: Option<DensityMatrix>,
    /// `Tr[Uₐ ρ_{S|a} Uₐ† H]`; zero for absent components.
    pub final_energy: f64,
    pub unitary: Option<ComplexMatrix>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorkReport {
    pub work: f64,
    /// `Tr[ρ_S H]`.
    pub initial_energy: f64,
    /// Ergotropy of the reduced system state with no measurement.
    pub baseline_ergotropy: f64,
    pub method: Method,
    pub branches: Vec<BranchWork>,
    /// Weak outcomes realized by the method, empty for projective ones.
    pub weak_branches: Vec<MeasurementBranch>,
}

impl WorkReport {
    /// `Σ weightₐ Fₐ`.
    pub fn averaged_final_energy(&self) -> f64 {
        self.branches.iter().map(|b| b.weight * b.final_energy).sum()
    }

    /// `work − baseline_ergotropy`.
    pub fn gain(&self) -> f64 {
        self.work - self.baseline_ergotropy
    }
}

struct Components {
    initial_energy: f64,
    baseline: f64,
    parts: Vec<BranchWork>,
}

impl Components {
    fn probabilities(&self) -> [f64; 2] {
        [self.parts[0].probability, self.parts[1].probability]
    }

    fn final_energies(&self) -> [f64; 2] {
        [self.parts[0].final_energy, self.parts[1].final_energy]
    }

    fn into_report(mut self, method: Method, weights: [f64; 2], weak: Vec<MeasurementBranch>) -> WorkReport {
        for (part, w) in self.parts.iter_mut().zip(weights) {
            part.weight = w;
        }
        let averaged: f64 = self.parts.iter().map(|b| b.weight * b.final_energy).sum();
        WorkReport {
            work: self.initial_energy - averaged,
            initial_energy: self.initial_energy,
            baseline_ergotropy: self.baseline,
            method,
            branches: self.parts,
            weak_branches: weak,
        }
    }
}

fn require_qubit_hamiltonian(h: &Hamiltonian) -> Result<()> {
    if h.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: h.dim(),
        });
    }
    Ok(())
}

fn components(rho: &DensityMatrix, h: &Hamiltonian, p: &ProjectorPair) -> Result<Components> {
    require_qubit_hamiltonian(h)?;
    let rho_s = reduced_state(rho, Subsystem::System)?;
    let plain = ergotropy(&rho_s, h)?;
    let mut parts = Vec::with_capacity(2);
    for branch in project_ancilla(rho, p)? {
        let (final_energy, unitary) = match &branch.conditional_state {
            Some(state) => (passive_energy(state, h)?, Some(ergotropic_unitary(state, h)?)),
            None => (0.0, None),
        };
        parts.push(BranchWork {
            outcome: branch.outcome,
            probability: branch.probability,
            weight: 0.0,
            conditional_state: branch.conditional_state,
            final_energy,
            unitary,
        });
    }
    Ok(Components {
        initial_energy: plain.initial_energy,
        baseline: plain.work,
        parts,
    })
}

/// Present components (probability above the zero-branch threshold).
fn present(probabilities: [f64; 2]) -> [bool; 2] {
    probabilities.map(|p| p > tol::ZERO_PROBABILITY)
}

/// Averaged ergotropy of the conditional system states after measuring `{Π₀, Π₁}` on the ancilla.
pub fn daemonic_ergotropy(rho: &DensityMatrix, h: &Hamiltonian, p: &ProjectorPair) -> Result<WorkReport> {
    let comps = components(rho, h, p)?;
    let probs = comps.probabilities();
    let keep = present(probs);
    let weights = [0, 1].map(|a| if keep[a] { probs[a] } else { 0.0 });
    Ok(comps.into_report(Method::Daemonic, weights, Vec::new()))
}

/// Daemonic ergotropy minus the ergotropy of the reduced system state.
pub fn daemonic_gain(rho: &DensityMatrix, h: &Hamiltonian, p: &ProjectorPair) -> Result<f64> {
    Ok(daemonic_ergotropy(rho, h, p)?.gain())
}

/// Work averaged over both outcomes of the weak measurement, with each weak
/// branch's final energy taken component-wise from the projective unitaries.
pub fn nonselective_weak_work(rho: &DensityMatrix, h: &Hamiltonian, w: &WeakMeasurement) -> Result<WorkReport> {
    let comps = components(rho, h, w.projectors())?;
    let probs = comps.probabilities();
    let keep = present(probs);
    let mut weights = [0.0; 2];
    for sign in Sign::BOTH {
        let b = w.weights(sign);
        for a in 0..2 {
            if keep[a] {
                weights[a] += b[a] * probs[a];
            }
        }
    }
    let weak = Sign::BOTH
        .iter()
        .map(|&s| weak_branch(rho, w, s))
        .collect::<Result<Vec<_>>>()?;
    let x = w.strength();
    Ok(comps.into_report(Method::WeakNonselective { x }, weights, weak))
}

/// Work after keeping only the outcome `P(±x)` on the ancilla.
pub fn selective_weak_work(
    rho: &DensityMatrix,
    h: &Hamiltonian,
    w: &WeakMeasurement,
    sign: Sign,
) -> Result<WorkReport> {
    let comps = components(rho, h, w.projectors())?;
    let weights = selective_weights(comps.probabilities(), w.weights(sign));
    let weak = vec![weak_branch(rho, w, sign)?];
    let method = Method::WeakSelective {
        x: w.strength(),
        sign,
    };
    Ok(comps.into_report(method, weights, weak))
}

/// `bₐ pₐ / Σ bₐ' pₐ'` over present components; a lone present component gets weight one.
fn selective_weights(probs: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    match present(probs) {
        [true, true] => {
            let total = b[0] * probs[0] + b[1] * probs[1];
            [b[0] * probs[0] / total, b[1] * probs[1] / total]
        }
        [true, false] => [1.0, 0.0],
        [false, true] => [0.0, 1.0],
        [false, false] => [0.0, 0.0],
    }
}

/// `(C₊, C₋)` with `C± = 2p₀p₁ tanh x / (1 ± (p₁ − p₀) tanh x)`.
///
/// Both vanish when either component is absent.
pub fn selection_coefficients(p0: f64, p1: f64, x: f64) -> (f64, f64) {
    if p0 <= tol::ZERO_PROBABILITY || p1 <= tol::ZERO_PROBABILITY {
        return (0.0, 0.0);
    }
    let t = x.tanh();
    let num = 2.0 * p0 * p1 * t;
    (num / (1.0 + (p1 - p0) * t), num / (1.0 - (p1 - p0) * t))
}

/// `δ(±x) = ±C±(F₀ − F₁)`: selective work minus daemonic ergotropy.
pub fn selective_advantage(p: [f64; 2], final_energies: [f64; 2], x: f64, sign: Sign) -> f64 {
    let (c_plus, c_minus) = selection_coefficients(p[0], p[1], x);
    let diff = final_energies[0] - final_energies[1];
    match sign {
        Sign::Plus => c_plus * diff,
        Sign::Minus => -c_minus * diff,
    }
}

/// Best selective weak outcome together with the quantities that chose it.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperErgotropy {
    pub report: WorkReport,
    pub sign: Sign,
    pub daemonic: f64,
    /// `δ` of the chosen sign from the closed form.
    pub advantage: f64,
    pub c_plus: f64,
    pub c_minus: f64,
}

impl SuperErgotropy {
    pub fn work(&self) -> f64 {
        self.report.work
    }
}

/// Picks `P(+x)` when `F₀ > F₁` and `P(−x)` when `F₁ > F₀`, so the advantage is non-negative.
/// Ties resolve to `+`.
pub fn super_ergotropy(rho: &DensityMatrix, h: &Hamiltonian, w: &WeakMeasurement) -> Result<SuperErgotropy> {
    let comps = components(rho, h, w.projectors())?;
    let probs = comps.probabilities();
    let keep = present(probs);
    let daemonic = comps.initial_energy
        - (0..2)
            .filter(|&a| keep[a])
            .map(|a| probs[a] * comps.parts[a].final_energy)
            .sum::<f64>();
    let energies = comps.final_energies();
    let sign = if (energies[0] - energies[1]).abs() < tol::SIGN_TIE || energies[0] > energies[1] {
        Sign::Plus
    } else {
        Sign::Minus
    };
    let x = w.strength();
    let (c_plus, c_minus) = selection_coefficients(probs[0], probs[1], x);
    let advantage = selective_advantage(probs, energies, x, sign);
    let weights = selective_weights(probs, weak_weights(sign.apply(x)));
    let report = comps.into_report(
        Method::WeakSelective { x, sign },
        weights,
        vec![weak_branch(rho, w, sign)?],
    );
    Ok(SuperErgotropy {
        report,
        sign,
        daemonic,
        advantage,
        c_plus,
        c_minus,
    })
}

/// `(2s₃ + |s + t₃| + |s − t₃|) Δε / 4`, where `t₃` is the third column of the
/// correlation matrix; daemonic ergotropy for the computational ancilla measurement.
pub fn daemonic_geometric(b: &BlochTwoQubit, delta_eps: f64) -> Result<f64> {
    check_gap(delta_eps)?;
    let t3 = b.t_column3();
    let plus = [b.s[0] + t3[0], b.s[1] + t3[1], b.s[2] + t3[2]];
    let minus = [b.s[0] - t3[0], b.s[1] - t3[1], b.s[2] - t3[2]];
    Ok((2.0 * b.s[2] + norm3(&plus) + norm3(&minus)) * delta_eps / 4.0)
}

/// Ergotropy of the reduced system state.
pub fn local_work(rho: &DensityMatrix, h: &Hamiltonian) -> Result<f64> {
    require_qubit_hamiltonian(h)?;
    Ok(ergotropy(&reduced_state(rho, Subsystem::System)?, h)?.work)
}

/// `(s₃ + |s|) Δε / 2`.
pub fn local_work_geometric(s: [f64; 3], delta_eps: f64) -> Result<f64> {
    check_gap(delta_eps)?;
    Ok((s[2] + norm3(&s)) * delta_eps / 2.0)
}

fn check_gap(delta_eps: f64) -> Result<()> {
    if delta_eps.is_nan() || delta_eps <= 0.0 || delta_eps.is_infinite() {
        return Err(Error::InvalidLevelSpacing(delta_eps));
    }
    Ok(())
}
