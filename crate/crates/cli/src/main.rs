//! `altgraph`: runs the claim registry or exports raw artifacts.
//!
//! Exit codes: 0 all claims clean, 1 at least one claim failed, 2 usage
//! error, 3 resource or I/O abort.

use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use altgraph_cli::config::{Cli, OutputFormat, RunConfig};
use altgraph_cli::export::{export, ExportError};
use altgraph_cli::runner::execute;

const EXIT_CLAIM_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

fn emit(text: &str, out: Option<&Path>) -> Result<(), std::io::Error> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    // clap itself exits with code 2 on unparsable arguments.
    let cli = Cli::parse();
    let config = match RunConfig::from_cli(&cli) {
        Ok(config) => config,
        Err(err) => {
            eprintln!("{err}");
            return ExitCode::from(EXIT_USAGE);
        }
    };

    if let Some(kind) = cli.export {
        let text = match export(&config, kind) {
            Ok(text) => text,
            Err(ExportError::Usage(msg)) => {
                eprintln!("usage error: {msg}");
                return ExitCode::from(EXIT_USAGE);
            }
            Err(ExportError::Resource(msg)) => {
                eprintln!("export aborted: {msg}");
                return ExitCode::from(EXIT_RESOURCE);
            }
        };
        return match emit(&text, cli.out.as_deref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(err) => {
                eprintln!("write failed: {err}");
                ExitCode::from(EXIT_RESOURCE)
            }
        };
    }

    let report = execute(&config);
    let rendered = match cli.format {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Json => report.to_json(),
    };
    if let Err(err) = emit(&rendered, cli.out.as_deref()) {
        eprintln!("write failed: {err}");
        return ExitCode::from(EXIT_RESOURCE);
    }
    if report.failures() > 0 {
        ExitCode::from(EXIT_CLAIM_FAILURE)
    } else {
        ExitCode::SUCCESS
    }
}
