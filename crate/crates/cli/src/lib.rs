//! Library half of the `quermass` binary: argument types, the subcommands and
//! report rendering. Reports are deterministic; the same arguments give
//! byte-identical output.

pub mod args;
pub mod commands;
pub mod error;
pub mod report;

use args::{Cli, Command};
use error::{CliError, CliResult};
use report::Report;

/// Environment variable capping the worker pool size.
pub const THREADS_VAR: &str = "QUERMASS_THREADS";

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> CliResult<Report> {
    match &cli.command {
        Command::Sweep(a) => commands::sweep(a),
        Command::Perturb(a) => commands::perturb(a),
        Command::Evenness(a) => commands::evenness(a),
        Command::Oracle(a) => commands::oracle(a),
        Command::Remark2d(a) => commands::remark2d(a),
    }
}

/// Sizes the global rayon pool from `QUERMASS_THREADS`, if set.
pub fn configure_threads(value: Option<&str>) -> CliResult<()> {
    let Some(raw) = value else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Config(format!("{THREADS_VAR}={raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))
}
