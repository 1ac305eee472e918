//! Scenario runner behind the `ergolab` command.

pub mod config;
pub mod csv;
pub mod error;
pub mod scenarios;
pub mod verify;

pub use config::{ExampleName, Scenario, ScenarioConfig, StateSpec, Sweep};
pub use error::{CliError, Result};
pub use scenarios::{run, Output, ScenarioRun};
