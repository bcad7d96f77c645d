//! Truncated zeta sums, non-sieving Euler products and their residual.
//!
//! For a generator `f` and limit `x`:
//!
//! ```text
//! Z(x) = [f(1) > 1] + sum_{n=1}^{x} f(n)^-s
//! P(x) = prod_{n=n0}^{x} (1 - f(n)^-s),   n0 = first n with f(n) >= 2
//! M(x) = Z(x) * P(x) - 1
//! ```
//!
//! When `f(1) > 1` the leading 1 is explicit and the product starts at `n = 1`;
//! when `f(1) = 1` the first sum term supplies the 1 and the product starts
//! after it. Starting at `n0` covers both and never multiplies by `1 - 1/1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::polynomial::IntegerPolynomial;
use crate::precision::{ln_bigint, Compensated, Precision, PrecisionValue};

/// Validated exponent `s >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Exponent {
    s: f64,
    integer: Option<u32>,
}

impl Exponent {
    pub(crate) fn new(s: f64, mode: Precision) -> Result<Self> {
        if !s.is_finite() || s < 1.0 {
            return Err(Error::InvalidExponent(s));
        }
        let integer = (s.fract() == 0.0 && s <= f64::from(u32::MAX)).then_some(s as u32);
        if mode == Precision::Exact && integer.is_none() {
            return Err(Error::ExactRationalUnsupported(s));
        }
        Ok(Self { s, integer })
    }

    /// `v^-s` in the given mode.
    pub(crate) fn reciprocal_power(&self, v: &BigInt, mode: Precision) -> PrecisionValue {
        match (mode, self.integer) {
            (Precision::Exact, Some(k)) => PrecisionValue::Exact(BigRational::new(
                BigInt::one(),
                num_traits::pow(v.clone(), k as usize),
            )),
            (Precision::Float, Some(1)) => PrecisionValue::Float(Compensated::from_bigint(v).recip()),
            (Precision::Float, Some(k)) => {
                let power = num_traits::pow(v.clone(), k as usize);
                PrecisionValue::Float(Compensated::from_bigint(&power).recip())
            }
            (Precision::Float, None) => {
                let arg = self.s * ln_bigint(v);
                let rel = (arg.abs() + 2.0) * f64::EPSILON;
                PrecisionValue::Float(Compensated::approximate((-arg).exp(), rel))
            }
            (Precision::Exact, None) => unreachable!("rejected in Exponent::new"),
        }
    }
}

/// Partial product together with where it started.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductPartial {
    pub value: PrecisionValue,
    /// First `n` included, `None` when no `f(n) >= 2` lies in `1..=x`.
    pub start_index: Option<u64>,
    /// Set when the product has no factors (value 1). A warning, not an error.
    pub empty: bool,
}

/// One `(f, x, s)` evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualResult {
    pub label: String,
    pub x: u64,
    pub s: f64,
    pub mode: Precision,
    pub zeta_partial: PrecisionValue,
    pub product_partial: PrecisionValue,
    pub m_value: PrecisionValue,
    pub start_index: Option<u64>,
    pub empty_product: bool,
}

/// Crude convergence diagnostic over a scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitEstimate {
    pub x: u64,
    /// Last computed `M`.
    pub estimate: f64,
    /// `|M(x_k) - M(x_{k-1})|` for the last two limits.
    pub delta: f64,
}

/// Running `Z` and `P`, extended one `n` at a time.
struct Accumulator<'a> {
    poly: &'a IntegerPolynomial,
    exponent: Exponent,
    mode: Precision,
    n: u64,
    zeta: PrecisionValue,
    product: PrecisionValue,
    start_index: Option<u64>,
}

impl<'a> Accumulator<'a> {
    fn new(poly: &'a IntegerPolynomial, s: f64, mode: Precision) -> Result<Self> {
        let exponent = Exponent::new(s, mode)?;
        let leading = if poly.value_at(1)?.is_one() {
            PrecisionValue::zero(mode)
        } else {
            PrecisionValue::one(mode)
        };
        Ok(Self {
            poly,
            exponent,
            mode,
            n: 0,
            zeta: leading,
            product: PrecisionValue::one(mode),
            start_index: None,
        })
    }

    fn extend_to(&mut self, x: u64) -> Result<()> {
        while self.n < x {
            self.n += 1;
            let v = self.poly.value_at(self.n)?;
            let term = self.exponent.reciprocal_power(&v, self.mode);
            self.zeta = self.zeta.add(&term);
            if self.start_index.is_none() && !v.is_one() {
                self.start_index = Some(self.n);
            }
            if self.start_index.is_some() {
                let factor = PrecisionValue::one(self.mode).sub(&term);
                self.product = self.product.mul(&factor);
            }
        }
        Ok(())
    }

    fn snapshot(&self) -> Result<ResidualResult> {
        let m_value = self.zeta.mul(&self.product).sub(&PrecisionValue::one(self.mode));
        let result = ResidualResult {
            label: self.poly.label().to_string(),
            x: self.n,
            s: self.exponent.s,
            mode: self.mode,
            zeta_partial: self.zeta.clone(),
            product_partial: self.product.clone(),
            m_value,
            start_index: self.start_index,
            empty_product: self.start_index.is_none(),
        };
        if !result.empty_product && !strictly_between_minus_one_and_zero(&result.m_value) {
            return Err(Error::BoundViolation {
                label: result.label,
                x: result.x,
                value: result.m_value.to_f64(),
            });
        }
        Ok(result)
    }
}

fn strictly_between_minus_one_and_zero(v: &PrecisionValue) -> bool {
    match v {
        PrecisionValue::Exact(r) => r.is_negative() && *r > -BigRational::one(),
        PrecisionValue::Float(c) => {
            let m = c.value();
            m < 0.0 && m > -1.0
        }
    }
}

fn check_inputs(poly: &IntegerPolynomial, x: u64) -> Result<()> {
    if x < 1 {
        return Err(Error::LimitTooSmall { x, min: 1 });
    }
    poly.require_monotone(x)
}

/// `Z(x)`; see the module docs for the leading-term rule.
pub fn zeta_partial(poly: &IntegerPolynomial, x: u64, s: f64, mode: Precision) -> Result<PrecisionValue> {
    check_inputs(poly, x)?;
    let mut acc = Accumulator::new(poly, s, mode)?;
    acc.extend_to(x)?;
    Ok(acc.zeta)
}

/// `P(x)`. An empty product (`x < n0`) yields 1 with [`ProductPartial::empty`] set.
pub fn euler_product_partial(
    poly: &IntegerPolynomial,
    x: u64,
    s: f64,
    mode: Precision,
) -> Result<ProductPartial> {
    check_inputs(poly, x)?;
    let mut acc = Accumulator::new(poly, s, mode)?;
    acc.extend_to(x)?;
    Ok(ProductPartial {
        value: acc.product,
        start_index: acc.start_index,
        empty: acc.start_index.is_none(),
    })
}

/// `M(x) = Z(x) P(x) - 1`, checked to lie in `(-1, 0)` whenever the product
/// is non-empty.
pub fn residual(poly: &IntegerPolynomial, x: u64, s: f64, mode: Precision) -> Result<ResidualResult> {
    check_inputs(poly, x)?;
    let mut acc = Accumulator::new(poly, s, mode)?;
    acc.extend_to(x)?;
    acc.snapshot()
}

/// Residuals at each of the strictly ascending `limits`, extending `Z` and `P`
/// incrementally between them.
pub fn residual_scan(
    poly: &IntegerPolynomial,
    limits: &[u64],
    s: f64,
    mode: Precision,
) -> Result<Vec<ResidualResult>> {
    if limits.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NotAscending);
    }
    let Some(&last) = limits.last() else {
        return Ok(Vec::new());
    };
    check_inputs(poly, limits[0])?;
    poly.require_monotone(last)?;
    let mut acc = Accumulator::new(poly, s, mode)?;
    limits
        .iter()
        .map(|&x| {
            acc.extend_to(x)?;
            acc.snapshot()
        })
        .collect()
}

/// Last `M` and the last inter-limit change. Needs at least three results.
pub fn limit_estimate(results: &[ResidualResult]) -> Result<LimitEstimate> {
    if results.len() < 3 {
        return Err(Error::InsufficientData {
            needed: 3,
            got: results.len(),
        });
    }
    let last = &results[results.len() - 1];
    let prev = &results[results.len() - 2];
    let delta = last.m_value.sub(&prev.m_value);
    let delta = match delta {
        PrecisionValue::Exact(r) => r.abs().to_f64().unwrap_or(f64::NAN),
        PrecisionValue::Float(c) => c.value().abs(),
    };
    Ok(LimitEstimate {
        x: last.x,
        estimate: last.m_value.to_f64(),
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn shell(p: u32) -> IntegerPolynomial {
        IntegerPolynomial::prime_shell(p).unwrap()
    }

    #[test]
    fn zeta_shell_three_first_terms() {
        let z = zeta_partial(&shell(3), 3, 1.0, Precision::Exact).unwrap();
        assert_eq!(z, PrecisionValue::Exact(ratio(159, 133)));
    }

    #[test]
    fn zeta_single_unit_term() {
        let z = zeta_partial(&shell(3), 1, 1.0, Precision::Exact).unwrap();
        assert_eq!(z, PrecisionValue::Exact(BigRational::one()));
    }

    #[test]
    fn zeta_leading_one_when_first_value_exceeds_one() {
        // f(n) = n + 1: Z(2) = 1 + 1/2 + 1/3.
        let f = IntegerPolynomial::from_i64s(&[1, 1], "n+1").unwrap();
        let z = zeta_partial(&f, 2, 1.0, Precision::Exact).unwrap();
        assert_eq!(z, PrecisionValue::Exact(ratio(11, 6)));
        let p = euler_product_partial(&f, 2, 1.0, Precision::Exact).unwrap();
        assert_eq!(p.start_index, Some(1));
        assert_eq!(p.value, PrecisionValue::Exact(ratio(1, 3)));
    }

    #[test]
    fn product_examples() {
        let p = euler_product_partial(&shell(3), 3, 1.0, Precision::Exact).unwrap();
        assert_eq!(p.value, PrecisionValue::Exact(ratio(108, 133)));
        assert_eq!(p.start_index, Some(2));
        let ints = IntegerPolynomial::integers();
        let p = euler_product_partial(&ints, 100, 1.0, Precision::Exact).unwrap();
        assert_eq!(p.value, PrecisionValue::Exact(ratio(1, 100)));
        let p = euler_product_partial(&ints, 2, 1.0, Precision::Float).unwrap();
        assert_eq!(p.value.to_f64(), 0.5);
    }

    #[test]
    fn empty_product_is_flagged() {
        let p = euler_product_partial(&IntegerPolynomial::integers(), 1, 1.0, Precision::Exact).unwrap();
        assert!(p.empty);
        assert_eq!(p.start_index, None);
        assert_eq!(p.value, PrecisionValue::Exact(BigRational::one()));

        let one = IntegerPolynomial::from_i64s(&[1], "one").unwrap();
        let r = residual(&one, 5, 1.0, Precision::Exact).unwrap();
        assert!(r.empty_product);
        assert_eq!(r.m_value, PrecisionValue::Exact(ratio(4, 1)));
    }

    #[test]
    fn residual_shell_three_small() {
        let r = residual(&shell(3), 3, 1.0, Precision::Exact).unwrap();
        assert_eq!(r.m_value, PrecisionValue::Exact(ratio(-517, 17689)));
        assert_eq!(r.m_value.decimal(7), "-0.0292272");
    }

    #[test]
    fn residual_two_integers() {
        let r = residual(&IntegerPolynomial::integers(), 2, 1.0, Precision::Exact).unwrap();
        assert_eq!(r.m_value, PrecisionValue::Exact(ratio(-1, 4)));
    }

    #[test]
    fn exponent_validation() {
        let f = IntegerPolynomial::integers();
        assert_eq!(
            residual(&f, 10, 1.5, Precision::Exact).unwrap_err(),
            Error::ExactRationalUnsupported(1.5)
        );
        assert_eq!(
            residual(&f, 10, 0.5, Precision::Float).unwrap_err(),
            Error::InvalidExponent(0.5)
        );
        assert!(residual(&f, 10, 1.5, Precision::Float).is_ok());
        assert!(residual(&f, 10, f64::NAN, Precision::Float).is_err());
    }

    #[test]
    fn integer_exponent_two_float_matches_exact() {
        let f = shell(3);
        let exact = residual(&f, 50, 2.0, Precision::Exact).unwrap().m_value.to_f64();
        let float = residual(&f, 50, 2.0, Precision::Float).unwrap().m_value.to_f64();
        assert!((exact - float).abs() < 1e-15);
    }

    #[test]
    fn non_monotone_generator_is_refused() {
        let f = IntegerPolynomial::from_i64s(&[6, -6, 2], "g").unwrap();
        assert!(matches!(
            residual(&f, 10, 1.0, Precision::Float),
            Err(Error::NotMonotone { n: 1, .. })
        ));
    }

    #[test]
    fn repeated_unit_values_break_the_bound() {
        // f = 1, 1, 3, 7, ...: Z carries two unit terms but P skips both.
        let f = IntegerPolynomial::from_i64s(&[3, -3, 1], "n^2-3n+3").unwrap();
        assert!(matches!(
            residual(&f, 3, 1.0, Precision::Exact),
            Err(Error::BoundViolation { x: 3, .. })
        ));
    }

    #[test]
    fn scan_rejects_unsorted_limits() {
        let f = IntegerPolynomial::integers();
        assert_eq!(
            residual_scan(&f, &[100, 50], 1.0, Precision::Float),
            Err(Error::NotAscending)
        );
        assert_eq!(
            residual_scan(&f, &[5, 5], 1.0, Precision::Float),
            Err(Error::NotAscending)
        );
        assert!(residual_scan(&f, &[], 1.0, Precision::Float).unwrap().is_empty());
    }

    #[test]
    fn scan_two() {
        let f = IntegerPolynomial::integers();
        let rs = residual_scan(&f, &[2], 1.0, Precision::Exact).unwrap();
        assert_eq!(rs[0].m_value, PrecisionValue::Exact(ratio(-1, 4)));
    }

    #[test]
    fn limit_estimate_needs_three_results() {
        let f = IntegerPolynomial::integers();
        let rs = residual_scan(&f, &[10, 20], 1.0, Precision::Float).unwrap();
        assert_eq!(
            limit_estimate(&rs),
            Err(Error::InsufficientData { needed: 3, got: 2 })
        );
    }

    #[test]
    fn limit_estimate_constant_sequence() {
        let f = IntegerPolynomial::integers();
        let r = residual(&f, 10, 1.0, Precision::Exact).unwrap();
        let est = limit_estimate(&[r.clone(), r.clone(), r]).unwrap();
        assert_eq!(est.delta, 0.0);
    }
}
