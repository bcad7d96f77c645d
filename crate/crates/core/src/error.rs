use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("the zero polynomial is not a sequence generator")]
    ZeroPolynomial,

    #[error("polynomial `{label}` is not positive integer-valued: f({n}) = {value}")]
    NonIntegerValued { label: String, n: u64, value: BigInt },

    #[error("polynomial `{label}` is not increasing up to x = {x}: first violation at n = {n}")]
    NotMonotone { label: String, x: u64, n: u64 },

    #[error("prime shell power must be at least 1, got {0}")]
    InvalidShellPower(u32),

    #[error("cannot parse polynomial spec `{0}` (expected `c0,c1,...`, `shell:p` or `integers`)")]
    InvalidSpec(String),

    #[error("exponent s = {0} must be a finite real >= 1")]
    InvalidExponent(f64),

    #[error("exact rational mode needs a positive integer exponent, got s = {0}")]
    ExactRationalUnsupported(f64),

    #[error("limit x = {x} is below the minimum {min}")]
    LimitTooSmall { x: u64, min: u64 },

    #[error("limits must be strictly ascending")]
    NotAscending,

    #[error("depth {0} is below the minimum chain depth 2")]
    DepthTooSmall(usize),

    #[error("polynomial `{label}` has no value >= 2 in 1..={x}")]
    NoAdmissibleTerms { label: String, x: u64 },

    #[error("M = {value:e} for `{label}` at x = {x} lies outside (-1, 0)")]
    BoundViolation { label: String, x: u64, value: f64 },

    #[error("need at least {needed} results, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("enumeration limits too large: x = {x} (max {max_x}), depth = {depth} (max {max_depth})")]
    LimitsTooLarge {
        x: u64,
        max_x: u64,
        depth: usize,
        max_depth: usize,
    },

    #[error("{0} is outside the 64-bit primality range")]
    OutOfRange(BigInt),
}
