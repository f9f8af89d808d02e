use clap::{Parser, Subcommand};
use mkse_cli::commands::{self, CommonArgs};
use std::path::PathBuf;
use std::process::ExitCode;

/// Pseudo-spectral simulator and bound-verification harness for the
/// modified Kuramoto-Sivashinsky equation on the 1D/2D torus.
#[derive(Parser)]
#[command(name = "mkse", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one trajectory and write time series, metadata and bound report.
    Run {
        /// TOML run configuration.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (overrides the config).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output formats (repeatable): csv, json, svg.
        #[arg(long = "format")]
        formats: Vec<String>,
        /// Worker threads for parallel sections.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Sweep a parameter over values x seeds, fit scaling exponents and
    /// compare against the analytic bounds.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "format")]
        formats: Vec<String>,
        #[arg(long)]
        workers: Option<usize>,
        /// Evaluate the bound formulas only; no simulation.
        #[arg(long)]
        bound_only: bool,
    },
    /// Print the closed-form bound table for lambda x L lists.
    Bounds {
        /// Spatial dimension, 1 or 2.
        #[arg(long)]
        d: u8,
        /// Comma-separated bifurcation parameter values (lambda > 0).
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<f64>,
        /// Comma-separated torus lengths (default 2 pi).
        #[arg(long, value_delimiter = ',', default_value = "6.283185307179586")]
        length: Vec<f64>,
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the randomized inequality suite and the extremizer probes.
    CheckInequalities {
        /// Number of random fields per inequality.
        #[arg(long, default_value_t = 1000)]
        seeds: u64,
        /// Iteration budget for each slack-minimizing probe (0 skips probes).
        #[arg(long, default_value_t = 2000)]
        budget: usize,
        /// Directory for the slack summary documents.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            config,
            out,
            formats,
            workers,
        } => commands::cmd_run(&config, &CommonArgs { out, formats, workers }),
        Command::Sweep {
            config,
            out,
            formats,
            workers,
            bound_only,
        } => commands::cmd_sweep(&config, &CommonArgs { out, formats, workers }, bound_only),
        Command::Bounds {
            d,
            lambda,
            length,
            csv,
        } => commands::cmd_bounds(d, &lambda, &length, csv.as_deref()),
        Command::CheckInequalities { seeds, budget, out } => {
            commands::cmd_check_inequalities(seeds, budget, out.as_deref())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
