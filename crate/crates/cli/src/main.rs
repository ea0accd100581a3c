use std::process::ExitCode;

use clap::{Parser, Subcommand};
use spin_unruh::verify::{run_all, DEFAULT_TOLERANCE};
use spin_unruh_cli::{sweep_to_output, SweepArgs};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY_FAILED: u8 = 2;

/// Entanglement of spin-1/2 field modes between an inertial and an
/// accelerated observer.
#[derive(Parser)]
#[command(name = "spin-unruh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a state family over an acceleration grid.
    Sweep(SweepArgs),
    /// Run every closed-form versus numeric oracle.
    Verify {
        /// Largest accepted |closed − numeric| discrepancy.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Sweep(args) => match args.resolve().and_then(|cfg| sweep_to_output(&cfg)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_USAGE)
            }
        },
        Command::Verify { tolerance } => {
            if !(tolerance.is_finite() && tolerance > 0.0) {
                eprintln!("error: --tolerance must be a positive number");
                return ExitCode::from(EXIT_USAGE);
            }
            let report = run_all(tolerance);
            for c in &report.checks {
                let status = if c.passed { "ok  " } else { "FAIL" };
                match &c.detail {
                    Some(d) => println!("{status} {:<44} error: {d}", c.name),
                    None => println!("{status} {:<44} max error {:.3e}", c.name, c.max_error),
                }
            }
            println!("max error {:.3e} (tolerance {:.0e})", report.max_error(), tolerance);
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                for c in report.failures() {
                    eprintln!("failed: {}", c.name);
                }
                ExitCode::from(EXIT_VERIFY_FAILED)
            }
        }
    }
}
