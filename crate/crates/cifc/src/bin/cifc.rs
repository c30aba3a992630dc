use std::path::PathBuf;
use std::process::ExitCode;

use cifc::{sweep::threads_from_env, CliError, Outcome, RunOptions, SweepConfig};
use clap::{Args, Parser, Subcommand};

/// Capacity bounds for the cognitive interference channel.
#[derive(Parser)]
#[command(name = "cifc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gaussian channel bounds.
    #[command(subcommand)]
    Gaussian(GaussianCmd),
    /// Finite-alphabet bounds.
    #[command(subcommand)]
    Dm(DmCmd),
}

#[derive(Subcommand)]
enum GaussianCmd {
    /// Outer, inner and time-sharing frontiers of one channel.
    Region(Common),
    /// Gap certification over a grid of channels.
    GapSweep(Common),
}

#[derive(Subcommand)]
enum DmCmd {
    /// Seeded invariant checks on random channels.
    Verify(Common),
    /// Sampled frontiers of the region families.
    Region(Common),
}

#[derive(Args)]
struct Common {
    /// JSON configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    alpha_grid: Option<usize>,
    #[arg(long)]
    r1_grid: Option<usize>,
}

type Handler = fn(&SweepConfig, &RunOptions) -> Result<Outcome, CliError>;

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let (common, f): (Common, Handler) = match cli.command {
        Command::Gaussian(GaussianCmd::Region(c)) => (c, cifc::gaussian_region),
        Command::Gaussian(GaussianCmd::GapSweep(c)) => (c, cifc::gaussian_gap_sweep),
        Command::Dm(DmCmd::Verify(c)) => (c, cifc::dm_verify),
        Command::Dm(DmCmd::Region(c)) => (c, cifc::dm_region),
    };
    let cfg = match &common.config {
        Some(p) => SweepConfig::load(p)?,
        None => SweepConfig::default(),
    };
    let opts = RunOptions {
        out: common.out,
        seed: common.seed,
        alpha_grid: common.alpha_grid,
        r1_grid: common.r1_grid,
        threads: threads_from_env(),
    };
    f(&cfg, &opts)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
