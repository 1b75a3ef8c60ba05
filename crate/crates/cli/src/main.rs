//! `dunkl` command-line tool.

mod cmd;
mod error;
mod io;
mod manifest;
mod parse;

use clap::{Parser, Subcommand};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "dunkl",
    version,
    about = "Dunkl intertwining, Dyson densities and freezing tools"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    Jack(cmd::jack::JackArgs),
    Intertwine(cmd::intertwine::IntertwineArgs),
    Tpd(cmd::tpd::TpdArgs),
    Simulate(cmd::simulate::SimulateArgs),
    Stats(cmd::simulate::StatsArgs),
    Replay(cmd::simulate::ReplayArgs),
    Freeze(cmd::freeze::FreezeArgs),
    Verify(cmd::verify::VerifyArgs),
}

/// Sizes the global worker pool from `DUNKL_THREADS` when set.
fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("DUNKL_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .map_err(|_| CliError::Parse(format!("DUNKL_THREADS={v:?} is not a thread count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Domain(e.to_string()))
}

fn dispatch(cli: &Cli) -> CliResult<()> {
    configure_threads()?;
    match &cli.command {
        Command::Jack(a) => cmd::jack::run(a),
        Command::Intertwine(a) => cmd::intertwine::run(a),
        Command::Tpd(a) => cmd::tpd::run(a),
        Command::Simulate(a) => cmd::simulate::run(a),
        Command::Stats(a) => cmd::simulate::stats(a),
        Command::Replay(a) => cmd::simulate::replay(a),
        Command::Freeze(a) => cmd::freeze::run(a),
        Command::Verify(a) => cmd::verify::run(a),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = dispatch(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
