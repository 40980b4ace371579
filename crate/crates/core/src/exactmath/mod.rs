//! Exact arithmetic substrate: rationals, integer matrices and their Smith
//! normal form, linear algebra over 𝔽_p, subspace enumeration, and closed
//! rational intervals.

mod fp;
mod interval;
mod matrix;
mod rat;
mod snf;
mod subspace;

pub(crate) use fp::inv_mod;
pub use fp::{fp_kernel, is_odd_prime, FpMatrix, FpVector};
pub use interval::{certified_abs_exceeds, interval_sum, RatInterval};
pub use matrix::IntMatrix;
pub use rat::{ParseRatError, Rat};
pub use snf::{snf, SnfResult};
pub use subspace::{subspace_count, subspaces, EchelonBasis, SpanIter, Subspaces};
