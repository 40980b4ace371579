use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid dimension: d = {d} exceeds ambient dimension n = {n}")]
    InvalidDimension { d: usize, n: usize },
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("empty interval: lower endpoint {lo} exceeds upper endpoint {hi}")]
    EmptyInterval { lo: String, hi: String },
    #[error("B({a},{b}) has even determinant and is a two-component link, not a knot")]
    EvenDeterminant { a: i64, b: i64 },
    #[error("B({a},{b}) requires gcd(a, b) = 1")]
    NotCoprime { a: i64, b: i64 },
    #[error("invalid two-bridge parameters: {0}")]
    InvalidKnot(String),
    #[error("B({a},{b}) has no two-term chain presentation ({a} is not 1 mod {b})")]
    UnsupportedPresentation { a: u64, b: u64 },
    #[error("invalid Seifert form: {0}")]
    InvalidSeifertForm(String),
    #[error("degenerate symmetric form: V + V^T is singular")]
    DegenerateForm,
    #[error("prime {p} is inadmissible for determinant {det}: {reason}")]
    InadmissiblePrime { p: u64, det: u64, reason: String },
    #[error("character generator {generator:?} has a coordinate divisible by {p}")]
    UnsupportedCharacter { p: u64, generator: [u32; 2] },
    #[error("character index {r} out of range for p = {p}")]
    CharacterIndex { r: u64, p: u64 },
    #[error("basis does not have full rank (rank {rank}, {rows} rows)")]
    InvalidBasis { rank: usize, rows: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("genus {g} is out of range (at most floor(n/2) = {max})")]
    OutOfRange { g: usize, max: usize },
    #[error("no linear bound: B- = {b_minus} does not exceed B+ = {b_plus} in either orientation")]
    NoLinearBound { b_minus: String, b_plus: String },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("family does not certify: {0}")]
    FamilyNotCertifying(String),
    #[error("certificate replay failed: {0}")]
    ReplayFailed(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
