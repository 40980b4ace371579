//! Four-genus lower bounds for connected sums of two-bridge knots.
//!
//! Three certifiers share one certificate type:
//!
//! * [`genus_lower_bound`] scans `g = 0, 1, …` and, for each `g`, checks
//!   that every subspace of characters of the required dimension contains
//!   a character whose σ₁τ bracket certifiably exceeds `4g` in absolute
//!   value;
//! * [`analytic_certificate_ex1`] replays the maximal-index argument on a
//!   greedily chosen family of `B_m` knots;
//! * [`linear_bound`] turns one knot's σ table into a bound linear in the
//!   number of copies.
//!
//! Every certificate carries enough exact data to be replayed with
//! [`BoundCertificate::replay`].

mod certificate;
mod exhaustive;
mod family;
mod lemma;
mod linear;

pub use certificate::{
    AnalyticWitness, BoundCertificate, CertificateKind, ExhaustiveWitness, IndexStep, IsotropyStep, LevelWitness,
    LinearStep, LinearWitness, Preconditions, SubspaceWitness, Witnesses,
};
pub use exhaustive::{genus_lower_bound, is_isotropic, obstructed, Mode, Obstruction, ObstructionConfig};
pub use family::{analytic_certificate_ex1, family_sum, greedy_family, Eq2Step, FamilyParams};
pub use lemma::constant_coordinate_vector;
pub use linear::{linear_bound, linear_coefficient, LinearCoefficient};

/// `⌈(n − 2g)/2⌉`, the subspace dimension guaranteed when `g₄ ≤ g`.
pub fn required_dimension(n: usize, g: usize) -> usize {
    (n - 2 * g).div_ceil(2)
}
