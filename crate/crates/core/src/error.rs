use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field generator {0}: must be a negative squarefree integer")]
    InvalidFieldDisc(i64),
    #[error("({u}, {v}) does not represent an integer of Q(sqrt({d}))")]
    ParityViolation { u: String, v: String, d: i64 },
    #[error("operands live in different fields: Q(sqrt({0})) and Q(sqrt({1}))")]
    DiscMismatch(i64, i64),
    #[error("{0} is not a negative fundamental discriminant")]
    NotFundamental(i64),
    #[error("invalid Lucas pair (P = {p}, b = {b}): {reason}")]
    InvalidLucasPair { p: i64, b: i64, reason: &'static str },
    #[error("u_{n} has {bits} bits, above the factoring budget of {limit} bits")]
    FactoringLimitExceeded { n: u32, bits: u64, limit: u64 },
    #[error("unsupported discriminant {0}")]
    UnsupportedDiscriminant(String),
    #[error("solver branch does not apply: {0}")]
    UnsupportedBranch(String),
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("sequence term {index} would exceed {limit} decimal digits")]
    GrowthCapExceeded { index: usize, limit: usize },
}
