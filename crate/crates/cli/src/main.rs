//! `spatent`: classical and spatial entropy of categorical rasters.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod entropy;
mod options;
mod output;
mod simulate;
mod study;

#[derive(Debug, Parser)]
#[command(
    name = "spatent",
    version,
    about = "Classical and spatial entropy of categorical rasters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one measure on a grid.
    Entropy(entropy::EntropyArgs),
    /// Sample synthetic urban rasters.
    Simulate(simulate::SimulateArgs),
    /// Run a replicated scenario study.
    Study(study::StudyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Entropy(a) => entropy::run(a),
        Command::Simulate(a) => simulate::run(a),
        Command::Study(a) => study::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
