//! Command-line front end: argument parsing, report emission and the acceptance suites.

pub mod args;
pub mod commands;
pub mod error;
pub mod input;
pub mod report;
pub mod suite;

use std::ffi::OsString;
use std::time::Instant;

use clap::Parser;
use serde_json::Value;

pub use error::{CliError, Result};
pub use report::{Format, Report, RunConfig};

/// Parses `argv` (program name first), runs the command and returns the exit code with the rendered output.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match args::Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let g = &cli.global;
    let config = RunConfig {
        group: commands::group_of(&cli.command),
        node_limit: g.node_limit,
        bits: g.bits,
        format: g.format,
        seed: g.seed,
        threads: g.threads,
    };
    let start = Instant::now();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(g.threads).build() {
        Ok(p) => p,
        Err(e) => return (2, format!("cannot start worker pool: {e}\n")),
    };
    let outcome = pool.install(|| commands::execute(&cli.command, g));
    let (code, outcome) = match outcome {
        Ok(o) => (if o.passed { 0 } else { 1 }, o),
        Err(e) => (e.exit_code(), report::Outcome { results: Value::Null, passed: false, summary: e.to_string(), table: None }),
    };
    let report = Report {
        command: argv.iter().skip(1).map(|s| s.to_string_lossy().into_owned()).collect(),
        config,
        results: outcome.results,
        passed: outcome.passed,
        summary: outcome.summary,
        wall_seconds: g.timing.then(|| start.elapsed().as_secs_f64()),
        table: outcome.table,
    };
    (code, report.render(g.format))
}
