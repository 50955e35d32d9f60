//! `cublat` command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage or validation errors, 1 when a
//! computation or output write fails.

mod commands;
mod config;
mod output;

use std::ffi::OsString;
use std::io::{self, Write};

use thiserror::Error;

pub use config::{CliConfig, Command, OutputFormat};
pub use output::{format_sig, parse_csv, render_report};

/// Environment variable that sets the default output format.
pub const OUTPUT_ENV: &str = "CUBLAT_OUTPUT";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("missing required flag --{0}")]
    Missing(&'static str),
    #[error("invalid value for --{flag}: {reason}")]
    Invalid { flag: &'static str, reason: String },
    #[error("config file {path}: {reason}")]
    Config { path: String, reason: String },
    #[error(transparent)]
    Compute(#[from] cublat_core::Error),
    #[error("writing output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(_) | CliError::Io(_) => 1,
            _ => 2,
        }
    }
}

/// Runs the CLI against the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_output = std::env::var(OUTPUT_ENV).ok();
    let config = match config::parse(argv, env_output.as_deref()) {
        Ok(config::Parsed::Config(config)) => config,
        Ok(config::Parsed::Info(text)) => {
            let _ = write!(out, "{text}");
            return 0;
        }
        Err(e) => return report(err, e),
    };
    match commands::execute(&config).and_then(|outcome| output::emit(&config, &outcome, out)) {
        Ok(()) => 0,
        Err(e) => report(err, e),
    }
}

fn report(err: &mut dyn Write, e: CliError) -> i32 {
    // clap renders its own `error:` prefix and usage block.
    let _ = match &e {
        CliError::Usage(text) => writeln!(err, "{text}"),
        _ => writeln!(err, "error: {e}"),
    };
    e.exit_code()
}
