//! `stpetersburg`: simulations, exact evaluations and dimension estimates for
//! the St. Petersburg game, written as CSV tables and SVG figures.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{boxdim, check, ifs, simulate, sojourn, steinhaus};

#[derive(Debug, Parser)]
#[command(name = "stpetersburg", version, about)]
struct Cli {
    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate repeated games and write the normalized Y and X block paths.
    Simulate(simulate::SimulateArgs),
    /// Evaluate ξ and f on a dyadic grid and sweep the Steinhaus identity.
    Steinhaus(steinhaus::SteinhausArgs),
    /// Attractor of the two-map IFS: rectangles, chaos game, dimension series.
    Ifs(ifs::IfsArgs),
    /// Box-counting dimension of the attractor or of simulated paths.
    Boxdim(boxdim::BoxdimArgs),
    /// Expected sojourn time of the space-time process near the origin.
    Sojourn(sojourn::SojournArgs),
    /// Run every acceptance check with fixed parameters.
    Check(check::CheckArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let outcome = match &cli.command {
        Command::Simulate(args) => simulate::run(args),
        Command::Steinhaus(args) => steinhaus::run(args),
        Command::Ifs(args) => ifs::run(args),
        Command::Boxdim(args) => boxdim::run(args),
        Command::Sojourn(args) => sojourn::run(args),
        Command::Check(args) => check::run(args),
    };
    match outcome {
        Ok(checks) => {
            let failed = report::summarize(&checks);
            if failed.is_empty() {
                ExitCode::SUCCESS
            } else {
                eprintln!("failed checks: {}", failed.join(", "));
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
