//! `kirchhoff`: resistance distances, Kirchhoff indices, concentration
//! predictions and Monte Carlo sweeps from the command line.
//!
//! Exit codes: 0 on success, 1 for invalid input, 2 for runtime or I/O
//! failures.

mod cmd;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "kirchhoff", version, about, propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Summarize a graph: size, connectivity, Wiener index.
    Graph(cmd::graph::Args),
    /// Print trace(L^+), the Kirchhoff index and, optionally, all resistances.
    Kirchhoff(cmd::kirchhoff::Args),
    /// Evaluate the closed-form predictions for G(n, p).
    Theory(cmd::theory::Args),
    /// Run the Monte Carlo sweep and write CSV and manifest files.
    Experiment(cmd::experiment::Args),
    /// Compare least-squares synchronization error with the Cramer-Rao bound.
    Sync(cmd::sync::Args),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Graph(args) => cmd::graph::run(args),
        Command::Kirchhoff(args) => cmd::kirchhoff::run(args),
        Command::Theory(args) => cmd::theory::run(args),
        Command::Experiment(args) => cmd::experiment::run(args),
        Command::Sync(args) => cmd::sync::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
