//! `qeuler` command-line front end.
//!
//! Every invocation prints one JSON record on stdout (or a CSV table with
//! `--csv`). Exit codes: 0 success, 1 an asserted identity or convergence
//! check failed, 2 usage or parameter error, 3 unsupported integrand.

mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::{Failure, EXIT_ASSERTION, EXIT_USAGE};

fn run(cli: &Cli) -> Result<commands::Outcome, Failure> {
    match &cli.command {
        Command::Compute(kind) => commands::compute(kind),
        Command::Verify(a) => commands::verify(a),
        Command::Convergence(a) => commands::convergence(a),
        Command::Table(a) => commands::table(a),
    }
}

/// Collapse a multi-line diagnostic (as clap produces) into one line, dropping usage hints.
fn one_line(s: &str) -> String {
    s.lines()
        .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            eprintln!("{}", one_line(&e.to_string()));
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let text = outcome.csv.unwrap_or_else(|| outcome.record.to_json());
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_USAGE);
            }
            match outcome.assertion_failure {
                Some(msg) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(EXIT_ASSERTION)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(f) => {
            eprintln!("error: {}", one_line(&f.message));
            ExitCode::from(f.code)
        }
    }
}
