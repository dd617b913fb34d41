mod args;
mod cache;
mod commands;
mod pool;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use twobridge::Error;

use args::{Cli, Command};
use commands::Context;

const VERIFY_FAILED: u8 = 1;
const SOLVER_FAILED: u8 = 2;
const USAGE: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_)
        | Error::Regime(_)
        | Error::InvalidKnot(_)
        | Error::InvalidIndex
        | Error::InvalidSlope { .. }
        | Error::Format(_) => USAGE,
        _ => SOLVER_FAILED,
    }
}

fn run(cli: Cli) -> Result<commands::Outcome, Error> {
    let mut ctx = Context::new(&cli.global)?;
    match &cli.command {
        Command::Table1 { n_max, only } => commands::table1(&mut ctx, only, *n_max),
        Command::Table2 { n_max, only, k_min, k_max } => commands::table2(&mut ctx, only, *n_max, *k_min, *k_max),
        Command::Alpha0 { n } => commands::alpha0(&mut ctx, *n),
        Command::Volume { n, alpha, k } => commands::volume(&mut ctx, *n, alpha.as_deref(), *k),
        Command::Cs { n, k } => commands::cs(&mut ctx, *n, *k),
        Command::Profile { n, from, to, points } => commands::profile(&mut ctx, *n, from, to, *points),
        Command::Verify => verify::run(&mut ctx),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(USAGE),
            };
        }
    };
    let verifying = matches!(cli.command, Command::Verify);
    match run(cli) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.text.as_bytes());
            match (out.failed, verifying) {
                (false, _) => ExitCode::SUCCESS,
                (true, true) => ExitCode::from(VERIFY_FAILED),
                (true, false) => ExitCode::from(SOLVER_FAILED),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
