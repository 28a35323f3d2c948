mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use args::{Cli, Format};
use commands::CliError;

const EXIT_DOMAIN: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Writes to standard output, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        2 => "debug",
        _ => "trace",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
        log::warn!("could not configure the thread pool: {e}");
    }

    let started = Instant::now();
    match commands::run(&cli) {
        Ok(outcome) => {
            match cli.format {
                Format::Json => {
                    let report = json!({
                        "tool": env!("CARGO_BIN_NAME"),
                        "version": env!("CARGO_PKG_VERSION"),
                        "command": outcome.command,
                        "config": outcome.config,
                        "result": outcome.result,
                        "elapsed_ms": started.elapsed().as_millis() as u64,
                    });
                    emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("json values serialize")));
                }
                Format::Text => emit(&outcome.text),
            }
            if outcome.inconclusive {
                ExitCode::from(EXIT_INCONCLUSIVE)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}
