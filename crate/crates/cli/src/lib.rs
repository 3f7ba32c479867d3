//! Command-line front end for the spin-geometry engine.

#![allow(clippy::needless_range_loop)]

pub mod commands;
pub mod config;
pub mod error;
pub mod invariants;
pub mod report;
pub mod sampling;

use clap::Parser;

use config::{Cli, Command, RunConfig};
use error::{CliError, EXIT_OK, EXIT_USAGE};
use frw_spin_core::ChartId;

/// Default number of sampled points per chart for `verify`.
pub const VERIFY_POINTS: usize = 100;

pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval { quantity, common } => {
            let cfg = RunConfig::from_args(&common, 1, &[ChartId::NorthStereo])?;
            commands::eval(&quantity, &cfg)
        }
        Command::Verify { common } => {
            let cfg = RunConfig::from_args(&common, VERIFY_POINTS, &ChartId::ALL)?;
            commands::verify(&cfg).map(|_| ())
        }
        Command::Lift { matrix, out, format } => {
            let text = commands::run_lift(&matrix, format)?;
            report::emit(&text, out.as_deref())
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("frw-spin: {e}");
            e.exit_code()
        }
    }
}
