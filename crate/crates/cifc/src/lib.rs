//! Command-line companion of `cifc-core`: configuration files, parallel
//! sweeps and CSV/JSON output.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod sweep;
pub mod verify;

pub use commands::{
    dm_region, dm_verify, gaussian_gap_sweep, gaussian_region, Outcome, RunOptions,
};
pub use config::SweepConfig;
pub use error::CliError;
