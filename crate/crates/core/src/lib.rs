//! Non-sieving zeta products over integer-valued polynomial sequences.
//!
//! Given a generator `f` (for example the prime shell `n^p - (n-1)^p`), this
//! crate computes the truncated sum `Z(x) = sum 1/f(n)^s`, the product
//! `P(x) = prod (1 - 1/f(n)^s)` taken over every sequence value, prime or not,
//! and the residual `M(x) = Z(x) P(x) - 1` that the missing sieve leaves
//! behind. It also evaluates the nested alternating M-series literally, with
//! exact oracles to measure how far it sits from `M(x)`, and the prime
//! statistics of the sequence.
//!
//! Every engine runs in either [`Precision::Exact`] (reduced big rationals) or
//! [`Precision::Float`] (double-double with a tracked error bound).

pub mod error;
pub mod mseries;
pub mod polynomial;
pub mod precision;
pub mod primes;
pub mod residual;

pub use error::{Error, Result};
pub use mseries::{
    compare_to_residual, enumerate_oracle, expansion_oracle, full_depth, mseries_literal, sigma_chain,
    ChainMagnitude, DepthTerm, DeviationReport, ExpandedResidual, MSeriesExpansion, Verdict,
};
pub use polynomial::{IntegerPolynomial, MonotoneCheck};
pub use precision::{Compensated, NeumaierSum, Precision, PrecisionValue};
pub use primes::{census, count_primes_in_outputs, is_prime, log_density_sum, PrimeCensus};
pub use residual::{
    euler_product_partial, limit_estimate, residual, residual_scan, zeta_partial, LimitEstimate,
    ProductPartial, ResidualResult,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
