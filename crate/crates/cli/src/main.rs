mod args;
mod cache;
mod commands;
mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

#[derive(Debug)]
pub enum CliError {
    /// Exit 1: schema violations, failed preconditions, unreadable files.
    Input(String),
    /// Exit 2: exact routes disagree.
    Disagreement { report: String, what: String },
    /// Exit 3: a numeric check failed.
    Verification { report: String, what: String },
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Disagreement { .. } => 2,
            CliError::Verification { .. } => 3,
        }
    }
}

fn out_path(cli: &Cli) -> Option<&PathBuf> {
    match &cli.command {
        Command::Coeffs(a) => a.output.out.as_ref(),
        Command::Gamma(a) | Command::Igamma(a) => a.output.out.as_ref(),
        Command::Tables(a) => a.output.out.as_ref(),
        Command::Verify(a) => a.out.as_ref(),
    }
}

fn emit(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Coeffs(a) => commands::coeffs(a),
        Command::Gamma(a) => commands::gamma(a),
        Command::Igamma(a) => commands::igamma(a),
        Command::Tables(a) => commands::tables(a),
        Command::Verify(a) => commands::verify(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let cache_dir = cache::dir();
    if let Some(dir) = &cache_dir {
        cache::load(dir);
    }
    let result = run(&cli);
    if let Some(dir) = &cache_dir {
        cache::store(dir);
    }
    let outcome = match result {
        Ok(text) => emit(out_path(&cli), &text),
        Err(CliError::Disagreement { report, what }) => {
            let _ = emit(out_path(&cli), &report);
            Err(CliError::Disagreement { report: String::new(), what })
        }
        Err(CliError::Verification { report, what }) => {
            let _ = emit(out_path(&cli), &report);
            Err(CliError::Verification { report: String::new(), what })
        }
        Err(e) => Err(e),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Input(msg) => eprintln!("error: {msg}"),
                CliError::Disagreement { what, .. } => eprintln!("error: {what} disagree"),
                CliError::Verification { what, .. } => eprintln!("verification failed: {what}"),
            }
            ExitCode::from(e.code())
        }
    }
}
