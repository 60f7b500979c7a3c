//! Command-line front end: scenario files, CSV tables and the `chronos`
//! subcommands.
//!
//! Exit codes: 0 success, 1 failed check or aborted run, 2 usage or
//! validation error, 3 solver failure.

mod checks;
mod commands;
mod scenario_file;
mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use checks::{cmd_check, commutator_defect, interior_gaussians, CheckReport, CheckRow, Suite};
pub use commands::{
    cmd_run, cmd_spectrum, cmd_subspace, default_scenario, retained_levels, Equation, RunOutput,
};
pub use scenario_file::{parse_scenario, serialize_scenario};
pub use table::{write_real, Cell, ResultTable};

use crate::constraints::DEFAULT_TOL;
use crate::dynamics::Scenario;
use crate::error::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "chronos", version, about = "Time-operator laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lowest eigenvalues of H and G against the closed forms.
    Spectrum {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        levels: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one invariant suite.
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Execute a scenario and write its trajectory.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Near-kernel of a constraint operator.
    Subspace {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "first")]
        equation: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoConvergence(_) => EXIT_SOLVER,
        Error::Syntax { .. } | Error::Validation { .. } | Error::UnknownSuite(_) => EXIT_USAGE,
        Error::Io(_) => EXIT_USAGE,
        _ => EXIT_FAILED,
    }
}

fn init_logging() {
    let mut b = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"));
    if std::env::var_os("CHRONOS_NO_COLOR").is_some() {
        b.write_style(env_logger::WriteStyle::Never);
    }
    let _ = b.try_init();
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    parse_scenario(&std::fs::read_to_string(path)?)
}

fn load_or_default(path: Option<&Path>) -> Result<Scenario> {
    path.map_or_else(|| Ok(default_scenario()), load_scenario)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Spectrum { config, levels, out } => {
            let sc = load_or_default(config.as_deref())?;
            emit(out.as_deref(), &cmd_spectrum(&sc, levels)?.to_csv())?;
            Ok(EXIT_OK)
        }
        Command::Check { suite, config, tol, out } => {
            let suite: Suite = suite.parse()?;
            let sc = load_or_default(config.as_deref())?;
            let report = cmd_check(suite, &sc, tol)?;
            emit(out.as_deref(), &report.table().to_csv())?;
            Ok(if report.all_pass() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Run { config, out } => {
            let sc = load_scenario(&config)?;
            let run = cmd_run(&sc)?;
            emit(out.as_deref(), &run.csv)?;
            match run.error {
                None => Ok(EXIT_OK),
                Some(e) => {
                    log::error!("run aborted: {e}");
                    Ok(exit_code(&e))
                }
            }
        }
        Command::Subspace { config, equation, tol, out } => {
            let equation: Equation = equation.parse()?;
            let sc = load_or_default(config.as_deref())?;
            emit(out.as_deref(), &cmd_subspace(&sc, equation, tol)?.to_csv())?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    init_logging();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
