mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{GramArgs, VerifyArgs};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen { params, n, out } => commands::gen(&params, n, &out),
        Command::Verify { params, n, seed, tol, inject_fault, out } => {
            commands::verify(&params, VerifyArgs { n, seed, tol, inject_fault }, &out)
        }
        Command::Gram { params, nmax, radius, panels, nodes, tol, fixed_radius, out } => {
            commands::gram(&params, GramArgs { nmax, radius, panels, nodes, tol, fixed_radius }, &out)
        }
        Command::Potential { params, grid, out } => commands::potential(&params, grid, &out),
        Command::Spectrum { params, h, count, out } => commands::spectrum(&params, h, count, &out),
        Command::Roots { params, n, tol, out } => commands::roots(&params, n, tol, &out),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
