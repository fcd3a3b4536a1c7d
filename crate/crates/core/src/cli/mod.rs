//! Command-line driver shared by the `timeslit` binary and the CLI tests.
//!
//! Exit codes: 0 success, 1 validation failure, 2 invalid input, 3 numeric
//! failure, 4 interference-fit violation (rows are still written).

pub mod commands;
pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::dynamics::Method;
use crate::error::Error;
use crate::models::ModelId;
use crate::validation::ValidationOptions;
use commands::{cmd_decompose, cmd_eigen, cmd_simulate, cmd_validate};
use config::{load, DecomposeConfig, EigenConfig, PartialConfig, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_ANSATZ: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "timeslit",
    version,
    about = "Single-slit, double-time interference in exactly solvable models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve one initial state (or a φ sweep) and write emission probabilities.
    Simulate(ConfigArgs),
    /// Fit A, B, C, S of the interference form on a time grid.
    Decompose(ConfigArgs),
    /// Numerical and closed-form eigenvalues.
    Eigen(ConfigArgs),
    /// Run the closed-form vs numerical check table.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// Flat JSON file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub model: Option<ModelId>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub t_steps: Option<u64>,
    /// Sweep φ over this many points of [0, 2π); overrides --phi.
    #[arg(long)]
    pub phi_steps: Option<u64>,
    #[arg(long)]
    pub method: Option<Method>,
    /// RK4 step size.
    #[arg(long, allow_negative_numbers = true)]
    pub dt: Option<f64>,
    /// Output file (standard output when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl ConfigArgs {
    fn flags(&self) -> PartialConfig {
        PartialConfig {
            model: self.model,
            omega0: self.omega0,
            omega1: self.omega1,
            alpha: self.alpha,
            beta: self.beta,
            phi: self.phi,
            t_max: self.t_max,
            t_steps: self.t_steps,
            phi_steps: self.phi_steps,
            method: self.method,
            dt: self.dt,
            out: self.out.clone(),
        }
    }

    pub fn resolve(&self) -> crate::Result<PartialConfig> {
        load(self.config.as_deref(), self.flags())
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct ValidateArgs {
    /// Replace every upper-bound tolerance with this value.
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Input(_) | Error::Unsupported(_) | Error::Io(_) => EXIT_INPUT,
        Error::Numeric(_) | Error::Structural(_) => EXIT_NUMERIC,
        Error::FitViolation { .. } => EXIT_ANSATZ,
    }
}

fn emit(out: Option<&Path>, text: &str) -> crate::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn run_command(command: &Command) -> crate::Result<i32> {
    match command {
        Command::Simulate(args) => {
            let config = RunConfig::from_partial(&args.resolve()?)?;
            let output = cmd_simulate(&config)?;
            for w in &output.warnings {
                eprintln!(
                    "warning: RK4 norm drift {:e} exceeds tolerance at dt = {}; consider a smaller --dt",
                    w.max_drift, w.dt
                );
            }
            emit(config.out.as_deref(), &output.csv)?;
            Ok(EXIT_OK)
        }
        Command::Decompose(args) => {
            let config = DecomposeConfig::from_partial(&args.resolve()?)?;
            let output = cmd_decompose(&config)?;
            emit(config.out.as_deref(), &output.csv)?;
            match output.violation() {
                Some(fit) => {
                    eprintln!(
                        "error: interference form violated at t = {}: residual {:e}",
                        fit.t, fit.residual
                    );
                    Ok(EXIT_ANSATZ)
                }
                None => Ok(EXIT_OK),
            }
        }
        Command::Eigen(args) => {
            let config = EigenConfig::from_partial(&args.resolve()?)?;
            emit(config.out.as_deref(), &cmd_eigen(&config)?)?;
            Ok(EXIT_OK)
        }
        Command::Validate(args) => {
            if let Some(tol) = args.tolerance {
                if !(tol >= 0.0 && tol.is_finite()) {
                    return Err(Error::Input(format!(
                        "tolerance must be non-negative, got {tol}"
                    )));
                }
            }
            let options = ValidationOptions {
                tolerance_override: args.tolerance,
                ..ValidationOptions::default()
            };
            let (report, text) = cmd_validate(&options)?;
            emit(args.out.as_deref(), &text)?;
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_VALIDATION
            })
        }
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run_command(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
