//! Command-line driver for the `corrbound` library: certified bounds for
//! the sharp constant of a weighted autocorrelation inequality, numerical
//! extremizers, and reproducible report files.

mod commands;
mod config;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

/// Certified bounds for the best constant `C` in
/// `∫∫ f(x) f(y) w(x−y) dx dy ≤ C·‖f‖₁‖f‖₂` over non-negative `f`,
/// for box, Gaussian, and tabulated symmetric decreasing weights.
#[derive(Parser)]
#[command(name = "corrbound", version)]
struct Cli {
    /// Worker threads for the λ sweep (default: all available cores).
    /// Thread count never changes the computed numbers.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one weight: certified bounds, extremizer, and report files.
    Solve(commands::SolveArgs),
    /// Re-run box and Gaussian at the fine operating point (δ ≈ 1.45e−3,
    /// Δλ = 0.001) and tabulate deviations from the expected reference
    /// digits. Long-running.
    ReproduceTable1(commands::ReproduceArgs),
    /// Print the discretized kernel lags for a weight and mesh.
    KernelDump(commands::KernelDumpArgs),
    /// Run only the fixed-point iteration and write its trace.
    FixedPoint(commands::FixedPointArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: cannot configure {t} worker threads: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Solve(args) => commands::solve(args),
        Command::ReproduceTable1(args) => commands::reproduce_table1(args),
        Command::KernelDump(args) => commands::kernel_dump(args),
        Command::FixedPoint(args) => commands::fixed_point(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
