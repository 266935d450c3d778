//! Library side of the `tgx` command: argument types, dataset loading,
//! and the run / sweep / accuracy / generate commands.

pub mod args;
pub mod commands;
pub mod config;
pub mod dataset;

use std::ffi::OsString;
use std::io::Write;

use anyhow::{Context, Result};
use clap::Parser;
use serde::Serialize;

use args::{Cli, Command, OutputFormat};

/// Exit codes: 0 success, 1 user error, 2 internal error.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USER: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn render<T: Serialize>(value: &T, rows: &[impl Serialize], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => Ok(serde_json::to_string_pretty(value)? + "\n"),
        OutputFormat::Csv => to_csv(rows),
    }
}

#[derive(Serialize)]
struct RunCsvRow<'a> {
    algorithm: &'a str,
    source: Option<u32>,
    wall_seconds: f64,
    digest: &'a str,
}

/// Runs a parsed command and returns what it prints.
pub fn execute(command: &Command) -> Result<String> {
    match command {
        Command::Run(a) => {
            let report = commands::cmd_run(a)?;
            let mut rows: Vec<RunCsvRow> = report
                .sources
                .iter()
                .map(|s| RunCsvRow {
                    algorithm: &report.algorithm,
                    source: Some(s.source),
                    wall_seconds: s.wall_seconds,
                    digest: &s.digest,
                })
                .collect();
            rows.push(RunCsvRow {
                algorithm: &report.algorithm,
                source: None,
                wall_seconds: report.wall_seconds,
                digest: &report.digest,
            });
            render(&report, &rows, a.output)
        }
        Command::Sweep(a) => {
            let rows = commands::cmd_sweep(a)?;
            render(&rows, &rows, a.output)
        }
        Command::Accuracy(a) => {
            let rows = commands::cmd_accuracy(a)?;
            render(&rows, &rows, a.output)
        }
        Command::Generate(a) => {
            let n = commands::cmd_generate(a)?;
            Ok(format!("wrote {n} edges to {}\n", a.out.display()))
        }
    }
}

/// Parses `args`, configures the worker pool, runs, prints, and returns the
/// exit code.
pub fn main_with_args(args: impl IntoIterator<Item = impl Into<OsString> + Clone>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USER } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return EXIT_USER;
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: cannot configure worker pool: {e}");
            return EXIT_INTERNAL;
        }
    }
    match std::panic::catch_unwind(|| execute(&cli.command)) {
        Ok(Ok(out)) => match std::io::stdout().lock().write_all(out.as_bytes()).context("writing output") {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: {e:#}");
                EXIT_INTERNAL
            }
        },
        Ok(Err(e)) => {
            eprintln!("error: {e:#}");
            EXIT_USER
        }
        Err(_) => EXIT_INTERNAL,
    }
}
