//! Capacity bounds for the two-user cognitive interference channel.
//!
//! The crate evaluates inner and outer bounds for discrete memoryless channels
//! whose cognitive output is a deterministic function of the inputs, closed-form
//! bounds for the Gaussian channel in standard form, and the rate-region
//! geometry needed to measure additive and multiplicative gaps between them.
//!
//! Everything here is pure computation over `alloc` collections; file formats,
//! sweeps and the command line live in the `cifc` crate.
//!
//! All rates are in bits (base-2 logarithms).

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod channel;
pub mod dm;
pub mod error;
pub mod gaussian;
pub mod info;
mod math;
pub mod region;
pub mod sample;
pub mod triple;

pub use channel::{classify_regime, Alphabets, DmChannel, GaussianChannel, Regime};
pub use error::{Error, Result};
pub use info::{JointDist, Var};
pub use region::RateRegion;
pub use triple::BoundTriple;

/// Complex scalar used for channel gains.
pub use num_complex::Complex64;
