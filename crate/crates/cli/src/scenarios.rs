//! Named scenarios producing CSV tables or JSON reports.

use ergolab_core::nonlocal::bell_diagonal_report;
use ergolab_core::{
    daemonic_ergotropy, ergotropy, local_work, nonlocal_report, nonselective_weak_work,
    quantum_correlation, reduced_state, selective_weak_work, super_ergotropy, BellDiagonal,
    DensityMatrix, Outcome, ProjectorPair, Sign, Subsystem, WeakMeasurement,
};
use serde_json::{json, Value};

use crate::config::{ExampleName, LoadedState, Scenario, ScenarioConfig};
use crate::csv::{cell, fmt_g12, Table};
use crate::error::{CliError, Result};
use crate::verify;

#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Csv(Table),
    Json(Value),
}

impl Output {
    pub fn render(&self) -> String {
        match self {
            Output::Csv(t) => t.to_csv(),
            Output::Json(v) => {
                let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }
}

/// Rendered output plus, for `verify`, the failed properties.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioRun {
    pub output: Output,
    pub failure: Option<String>,
}

pub fn run(cfg: &ScenarioConfig) -> Result<ScenarioRun> {
    let output = match cfg.scenario {
        Scenario::Fig1 => Output::Csv(run_fig1(cfg)?),
        Scenario::Fig2 => Output::Csv(run_fig2(cfg)?),
        Scenario::Fig3 => Output::Csv(run_fig3(cfg)?),
        Scenario::Fig4 => Output::Csv(run_fig4(cfg)?),
        Scenario::Ergotropy => Output::Json(run_ergotropy(cfg)?),
        Scenario::Daemonic => Output::Json(run_daemonic(cfg)?),
        Scenario::Super => run_super(cfg)?,
        Scenario::Nonlocal => Output::Json(run_nonlocal(cfg)?),
        Scenario::Verify => {
            let report = verify::run_verify(cfg)?;
            let failure = report.failure_summary();
            return Ok(ScenarioRun {
                output: Output::Csv(report.to_table()),
                failure,
            });
        }
    };
    Ok(ScenarioRun {
        output,
        failure: None,
    })
}

fn two_qubit(state: LoadedState) -> Result<DensityMatrix> {
    if state.density.dim() != 4 {
        return Err(CliError::validation("this scenario needs a two-qubit (dim 4) state"));
    }
    Ok(state.density)
}

fn no_state(cfg: &ScenarioConfig) -> Result<()> {
    if cfg.state.is_some() {
        return Err(CliError::validation(format!(
            "{} uses the fixed Bell-diagonal family and takes no state",
            cfg.scenario.name()
        )));
    }
    Ok(())
}

fn sin_family(theta: f64) -> Result<BellDiagonal> {
    Ok(BellDiagonal::new([0.5, -0.5, theta.sin()])?)
}

/// Selective-to-daemonic work ratio against measurement strength.
pub fn run_fig1(cfg: &ScenarioConfig) -> Result<Table> {
    let h = cfg.hamiltonian()?;
    let rho = two_qubit(cfg.state_or(ExampleName::ThirdMixture)?)?;
    let xs = cfg.grid(&["x"], 0.0, 5.0, 101)?;
    let floor = 1e-12 * cfg.gap();
    let mut table = Table::new(&["x", "selective_work", "daemonic_work", "ratio"]);
    for x in xs {
        let w = WeakMeasurement::new(x, ProjectorPair::computational())?;
        let best = super_ergotropy(&rho, &h, &w)?;
        let ratio = (best.daemonic > floor).then(|| best.work() / best.daemonic);
        table.push(vec![
            fmt_g12(x),
            fmt_g12(best.work()),
            fmt_g12(best.daemonic),
            cell(ratio),
        ]);
    }
    Ok(table)
}

/// Correlation map over `(c₁/c₂, c₃/c₂)` at fixed `c₂`; non-physical points keep an empty cell.
pub fn run_fig2(cfg: &ScenarioConfig) -> Result<Table> {
    no_state(cfg)?;
    let c2 = cfg.c2;
    if !c2.is_finite() || c2 == 0.0 || c2.abs() > 1.0 {
        return Err(CliError::validation(format!("--c2 must be nonzero with |c2| <= 1, got {c2}")));
    }
    let ratios = cfg.grid(&["ratio"], -2.0, 2.0, 81)?;
    let mut table = Table::new(&["ratio1", "ratio3", "correlation"]);
    for &r1 in &ratios {
        for &r3 in &ratios {
            let c = BellDiagonal::new([r1 * c2, c2, r3 * c2]).ok();
            table.push(vec![fmt_g12(r1), fmt_g12(r3), cell(c.map(|p| quantum_correlation(&p)))]);
        }
    }
    Ok(table)
}

/// Non-local works of the `c = (½, −½, sin θ)` family, normalized and absolute.
pub fn run_fig3(cfg: &ScenarioConfig) -> Result<Table> {
    no_state(cfg)?;
    let h = cfg.hamiltonian()?;
    let gap = cfg.gap();
    let thetas = cfg.grid(&["theta"], 0.0, std::f64::consts::PI, 181)?;
    let mut table = Table::new(&[
        "theta",
        "nonlocal_over_gap",
        "classical_nonlocal_over_gap",
        "nonlocal_work",
        "classical_nonlocal_work",
    ]);
    for theta in thetas {
        let r = bell_diagonal_report(&sin_family(theta)?, &h)?;
        table.push_numbers(&[
            theta,
            r.nonlocal_work / gap,
            r.classical_nonlocal_work / gap,
            r.nonlocal_work,
            r.classical_nonlocal_work,
        ]);
    }
    Ok(table)
}

/// Correlation of the `c = (½, −½, sin θ)` family.
pub fn run_fig4(cfg: &ScenarioConfig) -> Result<Table> {
    no_state(cfg)?;
    let thetas = cfg.grid(&["theta"], 0.0, std::f64::consts::PI, 181)?;
    let mut table = Table::new(&["theta", "correlation"]);
    for theta in thetas {
        table.push_numbers(&[theta, quantum_correlation(&sin_family(theta)?)]);
    }
    Ok(table)
}

pub fn run_ergotropy(cfg: &ScenarioConfig) -> Result<Value> {
    let h = cfg.hamiltonian()?;
    let rho = cfg.state_or(ExampleName::ThirdMixture)?.density;
    if rho.dim() == 2 {
        let r = ergotropy(&rho, &h)?;
        return Ok(json!({
            "dim": 2,
            "work": r.work,
            "initial_energy": r.initial_energy,
            "passive_energy": r.passive_energy,
        }));
    }
    let r = ergotropy(&rho, &h.joint_with_idle_ancilla())?;
    Ok(json!({
        "dim": 4,
        "work": r.work,
        "initial_energy": r.initial_energy,
        "passive_energy": r.passive_energy,
        "local_work": local_work(&rho, &h)?,
        "system_state_purity": reduced_state(&rho, Subsystem::System)?.purity(),
    }))
}

fn outcome_label(o: Outcome) -> Value {
    match o {
        Outcome::Projector(a) => json!(a),
        Outcome::Weak(s) => json!(s.to_string()),
        Outcome::Joint(k) => json!(k),
    }
}

pub fn run_daemonic(cfg: &ScenarioConfig) -> Result<Value> {
    let h = cfg.hamiltonian()?;
    let rho = two_qubit(cfg.state_or(ExampleName::ThirdMixture)?)?;
    let r = daemonic_ergotropy(&rho, &h, &ProjectorPair::computational())?;
    let branches: Vec<Value> = r
        .branches
        .iter()
        .map(|b| {
            json!({
                "outcome": outcome_label(b.outcome),
                "probability": b.probability,
                "final_energy": b.final_energy,
            })
        })
        .collect();
    Ok(json!({
        "work": r.work,
        "initial_energy": r.initial_energy,
        "ergotropy_without_measurement": r.baseline_ergotropy,
        "gain": r.gain(),
        "branches": branches,
    }))
}

fn run_super(cfg: &ScenarioConfig) -> Result<Output> {
    let h = cfg.hamiltonian()?;
    let rho = two_qubit(cfg.state_or(ExampleName::ThirdMixture)?)?;
    let comp = ProjectorPair::computational();
    if cfg.sweep.is_some() {
        let xs = cfg.grid(&["x"], 0.0, 5.0, 101)?;
        let mut table = Table::new(&[
            "x",
            "daemonic_work",
            "nonselective_work",
            "selective_plus_work",
            "selective_minus_work",
            "super_work",
            "sign",
        ]);
        for x in xs {
            let w = WeakMeasurement::new(x, comp.clone())?;
            let best = super_ergotropy(&rho, &h, &w)?;
            let mut row: Vec<String> = [
                x,
                best.daemonic,
                nonselective_weak_work(&rho, &h, &w)?.work,
                selective_weak_work(&rho, &h, &w, Sign::Plus)?.work,
                selective_weak_work(&rho, &h, &w, Sign::Minus)?.work,
                best.work(),
            ]
            .iter()
            .map(|&v| fmt_g12(v))
            .collect();
            row.push(best.sign.to_string());
            table.push(row);
        }
        return Ok(Output::Csv(table));
    }
    let w = WeakMeasurement::new(cfg.strength, comp)?;
    let best = super_ergotropy(&rho, &h, &w)?;
    let probabilities: Vec<f64> = best.report.branches.iter().map(|b| b.probability).collect();
    Ok(Output::Json(json!({
        "strength": cfg.strength,
        "sign": best.sign.to_string(),
        "work": best.work(),
        "daemonic_work": best.daemonic,
        "nonselective_work": nonselective_weak_work(&rho, &h, &w)?.work,
        "advantage": best.advantage,
        "c_plus": best.c_plus,
        "c_minus": best.c_minus,
        "outcome_probability": best.report.weak_branches[0].probability,
        "projective_probabilities": probabilities,
    })))
}

pub fn run_nonlocal(cfg: &ScenarioConfig) -> Result<Value> {
    let h = cfg.hamiltonian()?;
    let state = cfg.state_or(ExampleName::ThirdMixture)?;
    let bell = state.bell;
    let rho = two_qubit(state)?;
    let report = match bell {
        Some(p) => bell_diagonal_report(&p, &h)?,
        None => nonlocal_report(&rho, &h)?,
    };
    Ok(serde_json::to_value(report).expect("report serializes"))
}
