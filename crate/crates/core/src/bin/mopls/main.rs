mod cli;
mod commands;
mod manifest;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use mopls::Error;

use cli::{Cli, Command};

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 3;
const EXIT_INFEASIBLE: u8 = 4;

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Infeasible(_)
        | Error::Unsupported(_)
        | Error::NotPrimePower(_)
        | Error::TooManyLayers { .. }
        | Error::ComputeGate { .. } => EXIT_INFEASIBLE,
        Error::Hypothesis(_) | Error::Undefined(_) => EXIT_FAILED,
        _ => EXIT_INPUT,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let result = match &cli.command {
        Command::Construct(c) => commands::construct(c),
        Command::Verify(c) => commands::verify(c),
        Command::Search(c) => commands::search(c),
        Command::Code(c) => commands::code(c),
        Command::Export(c) => commands::export(c),
    }
    .and_then(|outcome| {
        let params = serde_json::to_value(&cli.command)?;
        manifest::write_manifests(params, &outcome.inputs, &outcome.outputs, start.elapsed())?;
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            if cli.json {
                let mut record = outcome.record;
                record["ok"] = outcome.ok.into();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&record).expect("JSON values serialize")
                );
            } else {
                print!("{}", outcome.text);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILED)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
