//! Scenario configuration: state descriptors, energies and sweeps.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use ergolab_core::state::named;
use ergolab_core::{BellDiagonal, BlochTwoQubit, ComplexMatrix, DensityMatrix, Hamiltonian};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExampleName {
    ThirdMixture,
    PsiTheta,
    PhiW,
}

impl FromStr for ExampleName {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "third-mixture" => Ok(Self::ThirdMixture),
            "psi-theta" => Ok(Self::PsiTheta),
            "phi-w" => Ok(Self::PhiW),
            other => Err(CliError::validation(format!(
                "unknown example '{other}' (expected third-mixture, psi-theta or phi-w)"
            ))),
        }
    }
}

/// JSON state descriptor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum StateSpec {
    Dense {
        dim: usize,
        re: Vec<Vec<f64>>,
        #[serde(default)]
        im: Option<Vec<Vec<f64>>>,
    },
    Bloch2q {
        s: [f64; 3],
        r: [f64; 3],
        t: [[f64; 3]; 3],
    },
    Bell {
        c: [f64; 3],
    },
    Example {
        name: ExampleName,
        /// Angle for `psi-theta`; defaults to π/4.
        #[serde(default)]
        theta: Option<f64>,
    },
}

/// A validated state, remembering its Bell-diagonal parameters when it has them.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedState {
    pub density: DensityMatrix,
    pub bell: Option<BellDiagonal>,
}

impl StateSpec {
    pub fn example(name: ExampleName) -> Self {
        StateSpec::Example { name, theta: None }
    }

    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|source| CliError::Json {
            path: origin.to_string(),
            source,
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn load(&self) -> Result<LoadedState> {
        let (density, bell) = match self {
            StateSpec::Dense { dim, re, im } => {
                if *dim != 2 && *dim != 4 {
                    return Err(CliError::validation(format!("dense dim must be 2 or 4, got {dim}")));
                }
                let zeros;
                let im = match im {
                    Some(im) => im,
                    None => {
                        zeros = vec![vec![0.0; *dim]; *dim];
                        &zeros
                    }
                };
                for (name, rows) in [("re", re), ("im", im)] {
                    if rows.len() != *dim || rows.iter().any(|r| r.len() != *dim) {
                        return Err(CliError::validation(format!("'{name}' must be {dim}x{dim}")));
                    }
                }
                (DensityMatrix::new(ComplexMatrix::from_parts(re, im)?)?, None)
            }
            StateSpec::Bloch2q { s, r, t } => (BlochTwoQubit::new(*s, *r, *t)?.to_density()?, None),
            StateSpec::Bell { c } => {
                let p = BellDiagonal::new(*c)?;
                (p.to_density()?, Some(p))
            }
            StateSpec::Example { name, theta } => {
                let rho = match name {
                    ExampleName::ThirdMixture => named::third_mixture(),
                    ExampleName::PsiTheta => {
                        let t = theta.unwrap_or(std::f64::consts::FRAC_PI_4);
                        if !t.is_finite() {
                            return Err(CliError::validation("theta must be finite"));
                        }
                        named::psi_theta(t)
                    }
                    ExampleName::PhiW => named::phi_w(),
                };
                (rho, None)
            }
        };
        Ok(LoadedState { density, bell })
    }
}

/// Qubit Hamiltonian from `e0,e1`.
pub fn parse_energies(s: &str) -> Result<[f64; 2]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(CliError::validation(format!("--energies needs two values 'e0,e1', got '{s}'")));
    }
    let mut e = [0.0; 2];
    for (slot, p) in e.iter_mut().zip(&parts) {
        *slot = p
            .parse()
            .map_err(|_| CliError::validation(format!("'{p}' is not a number")))?;
    }
    hamiltonian(e)?;
    Ok(e)
}

pub fn hamiltonian(e: [f64; 2]) -> Result<Hamiltonian> {
    if e[0].is_nan() || e[1].is_nan() || e[0] >= e[1] {
        return Err(CliError::validation(format!(
            "energies must satisfy e0 < e1, got {},{}",
            e[0], e[1]
        )));
    }
    Ok(Hamiltonian::qubit(e[0], e[1])?)
}

/// `var:start:stop:count`, evaluated on an evenly spaced grid including both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub var: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Sweep {
    pub fn new(var: &str, start: f64, stop: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(CliError::validation(format!("sweep count must be at least 2, got {count}")));
        }
        if !start.is_finite() || !stop.is_finite() || start >= stop {
            return Err(CliError::validation(format!(
                "sweep needs finite start < stop, got {start}:{stop}"
            )));
        }
        Ok(Self {
            var: var.to_string(),
            start,
            stop,
            count,
        })
    }

    pub fn points(&self) -> Vec<f64> {
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k == self.count - 1 {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (k as f64 / n)
                }
            })
            .collect()
    }

    pub(crate) fn expect_var(&self, allowed: &[&str]) -> Result<()> {
        if allowed.contains(&self.var.as_str()) {
            Ok(())
        } else {
            Err(CliError::validation(format!(
                "this scenario sweeps {}, not '{}'",
                allowed.join(" or "),
                self.var
            )))
        }
    }
}

impl FromStr for Sweep {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || CliError::validation(format!("sweep must look like var:start:stop:count, got '{s}'"));
        if parts.len() != 4 || parts[0].is_empty() {
            return Err(bad());
        }
        let start = parts[1].parse().map_err(|_| bad())?;
        let stop = parts[2].parse().map_err(|_| bad())?;
        let count = parts[3].parse().map_err(|_| bad())?;
        Sweep::new(parts[0], start, stop, count)
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.var, self.start, self.stop, self.count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Ergotropy,
    Daemonic,
    Super,
    Nonlocal,
    Verify,
}

impl Scenario {
    pub const ALL: [Scenario; 9] = [
        Scenario::Fig1,
        Scenario::Fig2,
        Scenario::Fig3,
        Scenario::Fig4,
        Scenario::Ergotropy,
        Scenario::Daemonic,
        Scenario::Super,
        Scenario::Nonlocal,
        Scenario::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Fig1 => "fig1",
            Scenario::Fig2 => "fig2",
            Scenario::Fig3 => "fig3",
            Scenario::Fig4 => "fig4",
            Scenario::Ergotropy => "ergotropy",
            Scenario::Daemonic => "daemonic",
            Scenario::Super => "super",
            Scenario::Nonlocal => "nonlocal",
            Scenario::Verify => "verify",
        }
    }
}

impl FromStr for Scenario {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| CliError::validation(format!("unknown scenario '{s}'")))
    }
}

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_VERIFY_COUNT: usize = 1000;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub state: Option<StateSpec>,
    pub energies: [f64; 2],
    pub sweep: Option<Sweep>,
    pub seed: u64,
    pub count: usize,
    /// Fixed `c₂` for the correlation map.
    pub c2: f64,
    /// Measurement strength when `super` runs without a sweep.
    pub strength: f64,
    pub tolerance: f64,
}

impl ScenarioConfig {
    pub fn new(scenario: Scenario) -> Self {
        Self {
            scenario,
            state: None,
            energies: [0.0, 1.0],
            sweep: None,
            seed: DEFAULT_SEED,
            count: DEFAULT_VERIFY_COUNT,
            c2: -0.5,
            strength: 1.0,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn hamiltonian(&self) -> Result<Hamiltonian> {
        hamiltonian(self.energies)
    }

    pub fn gap(&self) -> f64 {
        self.energies[1] - self.energies[0]
    }

    /// The configured state, or `default` when none was given.
    pub fn state_or(&self, default: ExampleName) -> Result<LoadedState> {
        match &self.state {
            Some(spec) => spec.load(),
            None => StateSpec::example(default).load(),
        }
    }

    pub fn grid(&self, var: &[&str], start: f64, stop: f64, count: usize) -> Result<Vec<f64>> {
        match &self.sweep {
            Some(s) => {
                s.expect_var(var)?;
                Ok(s.points())
            }
            None => Ok(Sweep::new(var[0], start, stop, count)?.points()),
        }
    }
}
