//! Command-line surface for the information-geometry laboratory.
//!
//! Subcommands: `metric` (one Fisher metric), `moments` (per-axis mean and
//! variance), `verify` (the full invariant suite with pass/fail lines),
//! `table` (a (dim, mass) sweep), `grid` (density values for plotting).
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 numerical non-convergence (best estimate still written, marked
//! `"unconverged": true`).

mod args;
mod commands;
mod config;
mod output;

use clap::Parser;

use args::{Cli, Command};

/// Command-level failure with its process exit code.
#[derive(Debug)]
pub enum CmdError {
    /// Bad flags, bad combinations, bad files. Exit 2.
    Usage(String),
    /// One or more verification checks failed (report already emitted). Exit 1.
    Verification,
    /// Numerical non-convergence (any partial output already emitted). Exit 3.
    Convergence(String),
}

impl CmdError {
    fn code(&self) -> i32 {
        match self {
            CmdError::Usage(_) => 2,
            CmdError::Verification => 1,
            CmdError::Convergence(_) => 3,
        }
    }

    fn report(&self) {
        match self {
            CmdError::Usage(msg) => eprintln!("error: {msg}"),
            CmdError::Verification => {}
            CmdError::Convergence(msg) => eprintln!("error: {msg}"),
        }
    }
}

impl From<infogeo_core::Error> for CmdError {
    fn from(err: infogeo_core::Error) -> Self {
        match err {
            infogeo_core::Error::Convergence { .. } => CmdError::Convergence(err.to_string()),
            other => CmdError::Usage(other.to_string()),
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CmdError> {
    match cli.command {
        Command::Metric(a) => commands::metric::run(a),
        Command::Moments(a) => commands::moments::run(a),
        Command::Verify(a) => commands::verify::run(a),
        Command::Table(a) => commands::table::run(a),
        Command::Grid(a) => commands::grid::run(a),
    }
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => {}
        Err(err) => {
            err.report();
            std::process::exit(err.code());
        }
    }
}
