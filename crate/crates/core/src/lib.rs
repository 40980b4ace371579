//! Exact Casson–Gordon signature invariants of two-bridge knots and
//! replayable lower-bound certificates for the smooth four-genus of
//! connected sums.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the table
//! cache and the command-line front end live in the `clasp` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bound;
pub mod cg;
mod error;
pub mod exactmath;
pub mod knot;

pub use error::{Error, Result};

/// Version string stamped into certificates and cache keys.
pub const LIBRARY_VERSION: &str = env!("CARGO_PKG_VERSION");
