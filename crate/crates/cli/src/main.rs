use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use quermass_cli::args::Cli;
use quermass_cli::error::{CliError, CliResult};
use quermass_cli::{configure_threads, execute, THREADS_VAR};

fn run(cli: &Cli) -> CliResult<()> {
    configure_threads(std::env::var(THREADS_VAR).ok().as_deref())?;
    let bytes = execute(cli)?.render(cli.format)?;
    match &cli.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(&bytes).map_err(|e| CliError::Io(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("quermass: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
