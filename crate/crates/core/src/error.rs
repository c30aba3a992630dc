use alloc::string::String;

use crate::info::Var;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("{name} = {value} is outside its admissible range")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("weak interference (|b| = {abs_b} <= 1): bound is only stated for |b| > 1")]
    WeakRegime { abs_b: f64 },

    #[error("channel output Y2 is not a deterministic function of the inputs")]
    NotDeterministic,

    #[error("unknown axis {0}")]
    UnknownAxis(Var),

    #[error("axis {0} appears in more than one argument set")]
    OverlappingAxes(Var),

    #[error("axis mismatch: {0}")]
    AxisMismatch(String),

    #[error("table of {size} cells exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
}
