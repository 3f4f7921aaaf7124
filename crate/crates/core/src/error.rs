use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("infinite valuation: the valuation of 0 is undefined")]
    InfiniteValuation,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("weights not primitive: gcd is {0}")]
    NotPrimitive(BigInt),

    #[error("weight tuple is empty")]
    EmptyWeights,

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: BigInt, right: BigInt },

    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("truncation must be at least 1")]
    ZeroTruncation,

    #[error("not invertible: constant term {0} is not a unit")]
    NotInvertible(BigInt),

    #[error("index {index} is beyond truncation {truncation}")]
    BeyondTruncation { index: usize, truncation: usize },

    #[error("invalid modulus {0}: reduction needs m >= 2")]
    InvalidModulus(BigInt),

    #[error("series is already reduced modulo {0}")]
    AlreadyReduced(BigInt),

    #[error("oracle range exceeded: r = {r}, k = {k} (limits r <= 12, k <= 6)")]
    OracleRangeExceeded { r: usize, k: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("transgression index {j} outside ({lower}, {upper}]")]
    IndexOutOfRange { j: usize, lower: usize, upper: usize },

    #[error("p = 2 needs k = 2 here; use presentation_mod2_k2 (got k = {0})")]
    EvenPrime(usize),

    #[error("expected exactly two weights, got {0}")]
    NeedTwoWeights(usize),

    #[error("only odd primes certify Pontrjagin-class bounds (got {0})")]
    OddPrimeRequired(u64),

    #[error("no transgression found: h_r(weights) vanishes mod {p} for every r in ({lower}, {upper}]")]
    NoTransgression { p: u64, lower: usize, upper: usize },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// True when the error signals a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::NoTransgression { .. } | Error::InvariantViolation(_))
    }
}
