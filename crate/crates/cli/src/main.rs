mod args;
mod commands;
mod reproduce;
mod source;

use std::fmt;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Failure of a subcommand, mapped onto the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or input files.
    Usage(String),
    Lib(gapsieve::Error),
    /// The computation ran but a comparison did not hold.
    Mismatch(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_capacity() => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Mismatch(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<gapsieve::Error> for CliError {
    fn from(e: gapsieve::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Lib(e.into())
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

fn run(cli: Cli) -> CliResult {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))?;
    }
    match cli.command {
        Command::Build(a) => commands::build(a),
        Command::Verify(a) => commands::verify(a),
        Command::Census(a) => commands::census(a),
        Command::Model(a) => commands::model(a),
        Command::Asymptotic(a) => commands::asymptotic(a),
        Command::Repetition(a) => commands::repetition(a),
        Command::Ajk(a) => commands::ajk(a),
        Command::Crossover(a) => commands::crossover(a),
        Command::Attrition(a) => commands::attrition(a),
        Command::NaiveError(a) => commands::naive_error(a),
        Command::Reproduce(a) => reproduce::run(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
