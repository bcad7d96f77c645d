//! Primality of generator outputs and the log-density column.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::polynomial::IntegerPolynomial;
use crate::precision::{ln_bigint, NeumaierSum};

/// First twelve primes; as Miller-Rabin bases they decide every `n < 3.3e24`.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Strong probable-prime test of odd `n > 2` against each base.
pub fn miller_rabin(n: u64, bases: &[u64]) -> bool {
    debug_assert!(n > 2 && n % 2 == 1);
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in bases {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut y = pow_mod(a, d, n);
        if y == 1 || y == n - 1 {
            continue;
        }
        for _ in 1..s {
            y = mul_mod(y, y, n);
            if y == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Deterministic primality for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    miller_rabin(n, &WITNESSES)
}

/// [`is_prime`] for big integers below `2^64`.
pub fn is_prime_big(v: &BigInt) -> Result<bool> {
    v.to_u64()
        .map(is_prime)
        .ok_or_else(|| Error::OutOfRange(v.clone()))
}

/// Smallest prime factor by trial division over `6k +/- 1`; `n` itself when prime.
pub fn smallest_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    if n.is_multiple_of(3) {
        return 3;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        if n.is_multiple_of(d + 2) {
            return d + 2;
        }
        d += 6;
    }
    n
}

/// Primality by trial division. Slow; the independent check for [`is_prime`].
pub fn trial_division(n: u64) -> bool {
    match n {
        0 | 1 => false,
        2 | 3 => true,
        _ => smallest_factor(n) == n,
    }
}

fn output_u64(poly: &IntegerPolynomial, n: u64) -> Result<u64> {
    let v = poly.value_at(n)?;
    v.to_u64().ok_or(Error::OutOfRange(v))
}

/// `n` in `1..=x` with `f(n)` prime, by the deterministic test.
pub fn prime_witnesses(poly: &IntegerPolynomial, x: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for n in 1..=x {
        if is_prime(output_u64(poly, n)?) {
            out.push(n);
        }
    }
    Ok(out)
}

pub fn count_primes_in_outputs(poly: &IntegerPolynomial, x: u64) -> Result<u64> {
    Ok(prime_witnesses(poly, x)?.len() as u64)
}

/// Same count by trial division.
pub fn count_primes_by_trial_division(poly: &IntegerPolynomial, x: u64) -> Result<u64> {
    let mut count = 0;
    for n in 1..=x {
        if trial_division(output_u64(poly, n)?) {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogDensity {
    /// `sum 1/ln f(n)` over `2 <= n <= x`, skipping `f(n) = 1`.
    pub value: f64,
    /// Indices left out because `f(n) = 1`.
    pub skipped: Vec<u64>,
}

/// `sum_{n=2}^{x} 1/ln f(n)` with compensated summation.
pub fn log_density_sum(poly: &IntegerPolynomial, x: u64) -> Result<LogDensity> {
    let mut sum = NeumaierSum::new();
    let mut skipped = Vec::new();
    for n in 2..=x {
        let v = poly.value_at(n)?;
        if v.is_one() {
            skipped.push(n);
            continue;
        }
        sum.add(1.0 / ln_bigint(&v));
    }
    Ok(LogDensity {
        value: sum.value(),
        skipped,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrimeCensus {
    pub label: String,
    pub x: u64,
    pub prime_count: u64,
    pub log_density_sum: f64,
    /// `n` skipped by the log sum because `f(n) = 1`.
    pub log_density_skipped: Vec<u64>,
    pub witnesses: Option<Vec<u64>>,
}

pub fn census(poly: &IntegerPolynomial, x: u64, with_witnesses: bool) -> Result<PrimeCensus> {
    let witnesses = prime_witnesses(poly, x)?;
    let density = log_density_sum(poly, x)?;
    Ok(PrimeCensus {
        label: poly.label().to_string(),
        x,
        prime_count: witnesses.len() as u64,
        log_density_sum: density.value,
        log_density_skipped: density.skipped,
        witnesses: with_witnesses.then_some(witnesses),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert!(is_prime(7));
        assert!(!is_prime(91));
        assert!(!is_prime(169));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(is_prime(2));
        assert!(is_prime(37));
    }

    #[test]
    fn hard_composites() {
        // Strong pseudoprimes to several small bases.
        for n in [
            2047u64,
            1_373_653,
            25_326_001,
            3_215_031_751,
            2_152_302_898_747,
            3_474_749_660_383,
            341_550_071_728_321,
            3_825_123_056_546_413_051,
        ] {
            assert!(!is_prime(n), "{n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(u64::MAX));
    }

    #[test]
    fn shell_seven_at_two_hundred_is_composite() {
        let v = 441_335_720_838_601u64;
        assert!(!is_prime(v));
        assert_eq!(smallest_factor(v), 14_743_177);
        assert_eq!(14_743_177 * 29_934_913, v);
    }

    #[test]
    fn big_out_of_range() {
        let v = BigInt::from(u64::MAX) + 1;
        assert_eq!(is_prime_big(&v), Err(Error::OutOfRange(v)));
        assert_eq!(is_prime_big(&BigInt::from(271)), Ok(true));
    }

    #[test]
    fn shell_three_first_ten() {
        let f = IntegerPolynomial::prime_shell(3).unwrap();
        assert_eq!(count_primes_in_outputs(&f, 10).unwrap(), 6);
        assert_eq!(prime_witnesses(&f, 10).unwrap(), vec![2, 3, 4, 5, 7, 10]);
    }

    #[test]
    fn log_density_single_term() {
        let d = log_density_sum(&IntegerPolynomial::integers(), 2).unwrap();
        assert!((d.value - 1.0 / 2f64.ln()).abs() < 1e-15);
        assert!(d.skipped.is_empty());
    }

    #[test]
    fn constant_one_census() {
        let f = IntegerPolynomial::prime_shell(1).unwrap();
        let c = census(&f, 10, true).unwrap();
        assert_eq!(c.prime_count, 0);
        assert_eq!(c.log_density_sum, 0.0);
        assert_eq!(c.log_density_skipped, (2..=10).collect::<Vec<_>>());
        assert_eq!(c.witnesses, Some(vec![]));
    }
}
