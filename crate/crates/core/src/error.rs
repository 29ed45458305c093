use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial is not integer-valued: {0}")]
    NotIntegerValued(String),
    #[error("generators have gcd {0}, expected 1")]
    GcdNotOne(String),
    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),
    #[error("windowed pruning is unsound for mixed-sign summands; supply a summand bound")]
    UnsupportedPruning,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("point has non-integral coordinates")]
    NotIntegral,
    #[error("invalid congruence modulus {0}: must be a positive even integer")]
    InvalidModulus(String),
    #[error("polynomial is not symmetric under x{0} <-> x{1}")]
    NotSymmetric(usize, usize),
    #[error("finite differences do not vanish within probe bound {0}")]
    BoundTooSmall(usize),
    #[error("invalid Kamke domain: {0}")]
    InvalidDomain(String),
    #[error("no Kamke constants for {0} power sums; supply a domain or enable sampling mode")]
    KamkeConstantsMissing(usize),
    #[error("degenerate sequence: no rank-restoring translate product within search bounds")]
    DegenerateUnresolved,
    #[error("sequence fails the hypotheses: {0}")]
    HypothesesFailed(String),
    #[error("index {index} outside finite table of length {len}")]
    OutOfRange { index: u64, len: usize },
    #[error("expected an affine map, found degree {0}")]
    NotAffine(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
