use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use ergolab::config::{parse_energies, DEFAULT_SEED, DEFAULT_TOLERANCE, DEFAULT_VERIFY_COUNT};
use ergolab::{run, CliError, ExampleName, Result, Scenario, ScenarioConfig, StateSpec, Sweep};

const TOLERANCE_VAR: &str = "ERGOLAB_TOLERANCE";

/// Ergotropy, daemonic and non-local work scenarios.
#[derive(Debug, Parser)]
#[command(name = "ergolab", version)]
struct Cli {
    /// fig1, fig2, fig3, fig4, ergotropy, daemonic, super, nonlocal or verify
    scenario: String,
    /// JSON state descriptor
    #[arg(long, value_name = "FILE", conflicts_with = "name")]
    state: Option<PathBuf>,
    /// Named example state: third-mixture, psi-theta, phi-w
    #[arg(long, value_name = "NAME")]
    name: Option<String>,
    /// Angle for psi-theta
    #[arg(long, requires = "name")]
    theta: Option<f64>,
    /// Qubit levels e0,e1
    #[arg(long, value_name = "E0,E1", default_value = "0,1")]
    energies: String,
    /// Grid as var:start:stop:count
    #[arg(long, value_name = "SPEC")]
    sweep: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write output here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Number of random states for verify
    #[arg(long, default_value_t = DEFAULT_VERIFY_COUNT)]
    count: usize,
    /// Fixed c2 for fig2
    #[arg(long, default_value_t = -0.5, allow_hyphen_values = true)]
    c2: f64,
    /// Measurement strength for super without a sweep
    #[arg(long, default_value_t = 1.0)]
    strength: f64,
}

fn tolerance() -> Result<f64> {
    match std::env::var(TOLERANCE_VAR) {
        Ok(raw) => {
            let t: f64 = raw
                .trim()
                .parse()
                .map_err(|_| CliError::validation(format!("{TOLERANCE_VAR}='{raw}' is not a number")))?;
            if !t.is_finite() || t < 0.0 {
                return Err(CliError::validation(format!("{TOLERANCE_VAR} must be finite and >= 0")));
            }
            Ok(t)
        }
        Err(_) => Ok(DEFAULT_TOLERANCE),
    }
}

fn build_config(cli: Cli) -> Result<(ScenarioConfig, Option<PathBuf>)> {
    let scenario: Scenario = cli.scenario.parse()?;
    let mut cfg = ScenarioConfig::new(scenario);
    cfg.state = match (cli.state, cli.name) {
        (Some(path), _) => Some(StateSpec::read(&path)?),
        (None, Some(name)) => Some(StateSpec::Example {
            name: name.parse::<ExampleName>()?,
            theta: cli.theta,
        }),
        (None, None) => None,
    };
    cfg.energies = parse_energies(&cli.energies)?;
    cfg.sweep = cli.sweep.as_deref().map(str::parse::<Sweep>).transpose()?;
    cfg.seed = cli.seed;
    cfg.count = cli.count;
    cfg.c2 = cli.c2;
    cfg.strength = cli.strength;
    cfg.tolerance = tolerance()?;
    Ok((cfg, cli.out))
}

fn execute(cli: Cli) -> Result<()> {
    let (cfg, out) = build_config(cli)?;
    let result = run(&cfg)?;
    let text = result.output.render();
    match out {
        Some(path) => std::fs::write(&path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                // reader went away, e.g. `| head`
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                other => other.map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?,
            }
        }
    }
    match result.failure {
        Some(msg) => Err(CliError::PropertyFailure(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ergolab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
