//! Integer-coefficient polynomials used as sequence generators.
//!
//! A generator `f` is admitted when every value `f(1), f(2), ...` is a positive
//! integer. Positivity is sampled on construction for `n = 1..=1000` and
//! re-checked by [`IntegerPolynomial::value_at`] on every evaluation made by the
//! engines. The prime-shell family `n^p - (n-1)^p` and the identity `f(n) = n`
//! have dedicated constructors.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Positivity is sampled on `1..=POSITIVITY_SAMPLE` when a polynomial is built.
pub const POSITIVITY_SAMPLE: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerPolynomial {
    /// Dense, constant term first, no trailing zeros.
    coefficients: Vec<BigInt>,
    label: String,
}

/// Outcome of [`IntegerPolynomial::validate_monotone`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonotoneCheck {
    pub x: u64,
    /// First `n` where `f(n + 1) > f(n)` fails, if any.
    pub first_violation: Option<u64>,
}

impl MonotoneCheck {
    pub fn is_monotone(&self) -> bool {
        self.first_violation.is_none()
    }
}

impl IntegerPolynomial {
    /// Builds a validated generator.
    ///
    /// Trailing zero coefficients are dropped. Fails with
    /// [`Error::NonIntegerValued`] on the first sampled `n` with `f(n) < 1`.
    pub fn new(coefficients: Vec<BigInt>, label: impl Into<String>) -> Result<Self> {
        let poly = Self::unvalidated(coefficients, label)?;
        for n in 1..=POSITIVITY_SAMPLE {
            poly.value_at(n)?;
        }
        Ok(poly)
    }

    pub fn from_i64s(coefficients: &[i64], label: impl Into<String>) -> Result<Self> {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect(), label)
    }

    /// Builds a polynomial without the positivity sample.
    ///
    /// Only the zero polynomial is rejected. Useful for diagnosing inputs such
    /// as `100 - n` with [`validate_monotone`](Self::validate_monotone); the
    /// engines still refuse any non-positive value they meet.
    pub fn unvalidated(mut coefficients: Vec<BigInt>, label: impl Into<String>) -> Result<Self> {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self {
            coefficients,
            label: label.into(),
        })
    }

    /// `n^p - (n-1)^p`, expanded binomially. Degree `p - 1`, and `f(1) = 1`.
    pub fn prime_shell(p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidShellPower(p));
        }
        // (n-1)^p = sum_k C(p,k) n^k (-1)^(p-k); the n^p terms cancel.
        let mut coefficients = Vec::with_capacity(p as usize);
        let mut binom = BigInt::one();
        for k in 0..p {
            let term = if (p - k).is_multiple_of(2) {
                -&binom
            } else {
                binom.clone()
            };
            coefficients.push(term);
            binom = binom * (p - k) / (k + 1);
        }
        Self::unvalidated(coefficients, format!("shell:{p}"))
    }

    /// `f(n) = n`.
    pub fn integers() -> Self {
        Self {
            coefficients: vec![BigInt::zero(), BigInt::one()],
            label: "integers".to_string(),
        }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    /// Horner evaluation in `i128`; `None` when an intermediate overflows.
    pub fn evaluate_fixed(&self, n: u64) -> Option<i128> {
        let n = i128::from(n);
        let mut acc: i128 = 0;
        for c in self.coefficients.iter().rev() {
            acc = acc.checked_mul(n)?.checked_add(c.to_i128()?)?;
        }
        Some(acc)
    }

    /// Exact `f(n)`. Uses the fixed-width path and escalates to big integers on
    /// overflow.
    pub fn evaluate(&self, n: u64) -> BigInt {
        if let Some(v) = self.evaluate_fixed(n) {
            return BigInt::from(v);
        }
        let n = BigInt::from(n);
        let mut acc = BigInt::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc * &n + c;
        }
        acc
    }

    /// `f(n)` with the generator invariant `f(n) >= 1` enforced.
    pub fn value_at(&self, n: u64) -> Result<BigInt> {
        let v = self.evaluate(n);
        if v.is_positive() {
            Ok(v)
        } else {
            Err(Error::NonIntegerValued {
                label: self.label.clone(),
                n,
                value: v,
            })
        }
    }

    /// `[f(1), ..., f(x)]`, each checked by [`value_at`](Self::value_at).
    pub fn values(&self, x: u64) -> Result<Vec<BigInt>> {
        (1..=x).map(|n| self.value_at(n)).collect()
    }

    /// Checks `f(n + 1) > f(n)` for `1 <= n < x`, except that `f(1) = f(2)` is
    /// tolerated when both equal 1.
    pub fn validate_monotone(&self, x: u64) -> MonotoneCheck {
        let mut first_violation = None;
        let mut prev = self.evaluate(1);
        for n in 1..x {
            let next = self.evaluate(n + 1);
            let ok = next > prev || (n == 1 && prev.is_one() && next.is_one());
            if !ok {
                first_violation = Some(n);
                break;
            }
            prev = next;
        }
        MonotoneCheck { x, first_violation }
    }

    /// Errors with [`Error::NotMonotone`] unless the generator is admissible up
    /// to `x`. Constant polynomials are let through; the engines treat them as
    /// degenerate.
    pub fn require_monotone(&self, x: u64) -> Result<()> {
        if self.is_constant() {
            return Ok(());
        }
        match self.validate_monotone(x).first_violation {
            None => Ok(()),
            Some(n) => Err(Error::NotMonotone {
                label: self.label.clone(),
                x,
                n,
            }),
        }
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("n")?,
                (1, false) => write!(f, "{mag}n")?,
                (_, true) => write!(f, "n^{k}")?,
                (_, false) => write!(f, "{mag}n^{k}")?,
            }
        }
        Ok(())
    }
}

/// Parses `"1,-3,3"` (ascending coefficients), `"shell:3"` or `"integers"`.
impl FromStr for IntegerPolynomial {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.eq_ignore_ascii_case("integers") {
            return Ok(Self::integers());
        }
        if let Some(p) = spec.strip_prefix("shell:") {
            let p: u32 = p
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSpec(spec.to_string()))?;
            let poly = Self::prime_shell(p)?;
            return Self::new(poly.coefficients, poly.label);
        }
        let coefficients = spec
            .split(',')
            .map(|c| c.trim().parse::<BigInt>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidSpec(spec.to_string()))?;
        Self::new(coefficients, spec)
    }
}
