use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use clp_cli::commands::{self, CmdError};
use clp_core::numerics::Fuel;

/// Workbench for linear programs with constructive-real coefficients.
#[derive(Parser)]
#[command(name = "clpw", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a problem whose coefficients are all rational, exactly.
    SolveRational { file: PathBuf },
    /// Run the semi-deciders on a problem file at a fixed fuel.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        fuel: u32,
        /// Plan to check, e.g. "x=1,y=-1/2"; missing variables are 0.
        #[arg(long)]
        plan: Option<String>,
        /// Directory searched for `<name>.json` machine specs.
        #[arg(long)]
        machines: Option<PathBuf>,
    },
    /// Run every family over the machines in a directory, as JSON Lines.
    Gallery {
        #[arg(long)]
        machines: PathBuf,
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        fuel: u32,
    },
    /// Print a rational approximation of an expression to within eps.
    Approx {
        expr: String,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        machines: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = match cli.cmd {
        Cmd::SolveRational { file } => commands::solve_rational(&file, &mut out),
        Cmd::Analyze { file, fuel, plan, machines } => {
            commands::analyze(&file, Fuel(fuel), plan.as_deref(), machines.as_deref(), &mut out)
        }
        Cmd::Gallery { machines, n_max, fuel } => {
            commands::gallery(&machines, n_max, Fuel(fuel), &mut out, &mut std::io::stderr())
        }
        Cmd::Approx { expr, eps, machines } => commands::approx(&expr, &eps, machines.as_deref(), &mut out),
    };
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(CmdError::exit_code(&e) as u8)
        }
    }
}
