//! Parallel evaluation. Results are collected in input order, so the output
//! does not depend on the number of worker threads.

use cifc_core::gaussian::{gap_report_with_penalty, GapReport};
use cifc_core::GaussianChannel;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;

/// Environment variable read by the binary to size the worker pool.
pub const THREADS_ENV: &str = "CIFC_THREADS";

pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
}

/// `None` uses rayon's default size.
pub fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    b.build()
        .map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub a_re: f64,
    pub a_im: f64,
    pub abs_b: f64,
    pub p1: f64,
    pub p2: f64,
    pub additive_gap_bits: f64,
    pub mult_gap: f64,
    pub worst_alpha: f64,
    pub worst_r1: f64,
    pub per_alpha_gap_bits: f64,
    pub per_alpha_identity_error: f64,
}

impl From<&GapReport> for SweepRow {
    fn from(r: &GapReport) -> Self {
        let ch = &r.channel;
        Self {
            a_re: ch.a().re,
            a_im: ch.a().im,
            abs_b: ch.abs_b(),
            p1: ch.p1(),
            p2: ch.p2(),
            additive_gap_bits: r.additive_gap_bits,
            mult_gap: r.multiplicative_gap,
            worst_alpha: r.worst_alpha,
            worst_r1: r.worst_r1,
            per_alpha_gap_bits: r.per_alpha_gap_bits,
            per_alpha_identity_error: r.per_alpha_identity_error,
        }
    }
}

pub fn gap_sweep(
    channels: &[GaussianChannel],
    alpha_grid: usize,
    r1_grid: usize,
    inner_penalty: f64,
    pool: &rayon::ThreadPool,
) -> Result<Vec<GapReport>, CliError> {
    pool.install(|| {
        channels
            .par_iter()
            .map(|ch| gap_report_with_penalty(ch, alpha_grid, r1_grid, inner_penalty))
            .collect::<Result<Vec<_>, _>>()
    })
    .map_err(CliError::from)
}
