use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

mod args;
mod commands;
mod config;
mod output;

use args::{Cli, Group};
use commands::Outcome;

fn main() -> ExitCode {
    let argv = match config::expand(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            output::note(&format!("error: {e}"));
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let result = match cli.group {
        Group::Profile(cmd) => commands::profile::run(cmd),
        Group::Trace(cmd) => commands::trace::run(cmd),
        Group::Discrepancy(cmd) => commands::discrepancy::run(cmd),
        Group::Unique(cmd) => commands::unique::run(cmd),
    };
    let code = match result {
        Ok(Outcome::Done) => 0,
        Ok(Outcome::Violation(msg)) => {
            output::note(&format!("violation: {msg}"));
            1
        }
        Err(e @ dnacodes::Error::DecodeFailure(_)) => {
            output::note(&format!("error: {e}"));
            1
        }
        Err(e) => {
            output::note(&format!("error: {e}"));
            2
        }
    };
    // Run report goes to stderr so artifacts stay byte-identical across runs.
    let report = serde_json::json!({
        "version": env!("CARGO_PKG_VERSION"),
        "argv": argv.iter().map(|a| a.to_string_lossy()).collect::<Vec<_>>(),
        "exit_code": code,
        "wall_time_s": start.elapsed().as_secs_f64(),
    });
    output::note(&report.to_string());
    ExitCode::from(code)
}
