use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid range [{lo}, {hi}]")]
    InvalidRange { lo: u64, hi: u64 },

    #[error("base primes stop at {largest}, but the prime {missing} <= sqrt({hi}) is needed")]
    MissingBasePrimes { largest: u64, missing: u64, hi: u64 },

    #[error("{what} {value} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("x = {x} is beyond the supported limit {limit} of {method}")]
    MethodLimit {
        method: &'static str,
        x: u64,
        limit: u64,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("bound `{name}` is not defined at x = {x}")]
    Domain { name: String, x: f64 },

    #[error("unknown bound `{name}`; valid names: {valid}")]
    UnknownBound { name: String, valid: String },

    #[error("unknown claim id `{id}`; valid ids: {valid}")]
    UnknownClaim { id: String, valid: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
