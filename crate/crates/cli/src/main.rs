//! `openopen`: simulations, tournaments, verification, club filter tools,
//! Kuratowski–Ulam runs and the session server.
//!
//! Exit codes: 0 success, 2 configuration error, 3 engine or contract
//! violation, 4 verification failure. JSON goes to `--out` or standard
//! output; logs go to standard error.

mod club;
mod ku;
mod simulate;
mod util;
mod verify;

use std::net::SocketAddr;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use util::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "openopen", version, about = "Open-open game simulator")]
struct Cli {
    /// More log output (repeat for debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Plays one game, or a tournament over a seed range.
    Simulate(simulate::SimulateArgs),
    /// Re-checks a transcript and its certificates.
    Verify(verify::VerifyArgs),
    /// Club filter elements.
    #[command(subcommand)]
    Club(club::ClubCommand),
    /// Builds and audits a Kuratowski–Ulam section tree.
    Ku(ku::KuArgs),
    /// Runs the JSON session API.
    Serve(ServeArgs),
}

#[derive(clap::Args, Debug)]
struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1")]
    host: String,
    #[arg(long, default_value_t = 8080)]
    port: u16,
}

fn serve(a: &ServeArgs) -> CliResult {
    let addr: SocketAddr = format!("{}:{}", a.host, a.port)
        .parse()
        .map_err(|e| CliError::config(format!("bad address: {e}")))?;
    let rt = tokio::runtime::Runtime::new().map_err(|e| CliError::config(e.to_string()))?;
    rt.block_on(openopen_service::serve(addr))
        .map_err(|e| CliError::config(format!("{addr}: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let result = match &cli.command {
        Command::Simulate(a) => simulate::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Club(c) => club::run(c),
        Command::Ku(a) => ku::run(a),
        Command::Serve(a) => serve(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
