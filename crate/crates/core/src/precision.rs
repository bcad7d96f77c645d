//! Number representations shared by the engines.
//!
//! Two modes are supported. `Exact` carries a reduced big rational. `Float`
//! carries a double-double value (`hi + lo`, the low word being the running
//! compensation) together with a conservative absolute error bound that grows
//! with every operation.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Relative rounding unit of double-double arithmetic, 2^-104.
const DD_EPS: f64 = 4.930_380_657_631_324e-32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Precision {
    Exact,
    #[default]
    Float,
}

impl Precision {
    pub fn as_str(self) -> &'static str {
        match self {
            Precision::Exact => "exact",
            Precision::Float => "float",
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" | "rational" => Ok(Precision::Exact),
            "float" | "compensated" => Ok(Precision::Float),
            other => Err(format!("unknown precision mode `{other}` (expected exact|float)")),
        }
    }
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Double-double accumulator with a tracked absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Compensated {
    hi: f64,
    lo: f64,
    err: f64,
}

impl Compensated {
    pub const ZERO: Self = Self {
        hi: 0.0,
        lo: 0.0,
        err: 0.0,
    };
    pub const ONE: Self = Self {
        hi: 1.0,
        lo: 0.0,
        err: 0.0,
    };

    pub fn from_f64(v: f64) -> Self {
        Self {
            hi: v,
            lo: 0.0,
            err: 0.0,
        }
    }

    /// Nearest double-double to `v`.
    pub fn from_bigint(v: &BigInt) -> Self {
        let hi = v.to_f64().unwrap_or(f64::INFINITY);
        let rest = BigInt::from_f64(hi).map(|h| v - h);
        match rest {
            Some(rest) if rest.is_zero() => Self::from_f64(hi),
            Some(rest) => {
                let lo = rest.to_f64().unwrap_or(0.0);
                let (hi, lo) = quick_two_sum(hi, lo);
                Self {
                    hi,
                    lo,
                    err: hi.abs() * DD_EPS,
                }
            }
            None => Self {
                hi,
                lo: 0.0,
                err: f64::INFINITY,
            },
        }
    }

    /// A value known only to about `rel_err` relative accuracy.
    pub fn approximate(v: f64, rel_err: f64) -> Self {
        Self {
            hi: v,
            lo: 0.0,
            err: v.abs() * rel_err,
        }
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// The running compensation term.
    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn value(&self) -> f64 {
        self.hi + self.lo
    }

    pub fn error_bound(&self) -> f64 {
        self.err
    }

    fn magnitude(&self) -> f64 {
        self.hi.abs() + self.lo.abs()
    }

    pub fn recip(self) -> Self {
        Self::ONE / self
    }

    /// Product with an exact double, without error bookkeeping (used by division).
    fn mul_exact(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Self { hi, lo, err: 0.0 }
    }

    /// Exact value of `hi + lo` as a rational.
    pub fn to_rational(&self) -> BigRational {
        let h = BigRational::from_f64(self.hi).unwrap_or_else(BigRational::zero);
        let l = BigRational::from_f64(self.lo).unwrap_or_else(BigRational::zero);
        h + l
    }
}

impl Add for Compensated {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        let err = self.err + rhs.err + 4.0 * DD_EPS * (self.magnitude() + rhs.magnitude());
        Self { hi, lo, err }
    }
}

impl Neg for Compensated {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
            err: self.err,
        }
    }
}

impl Sub for Compensated {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for Compensated {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        let err = self.magnitude() * rhs.err
            + rhs.magnitude() * self.err
            + self.err * rhs.err
            + 8.0 * DD_EPS * hi.abs();
        Self { hi, lo, err }
    }
}

impl Div for Compensated {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs.mul_exact(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs.mul_exact(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        let (hi, lo) = {
            let (s, e) = two_sum(hi, q3);
            quick_two_sum(s, e + lo)
        };
        let q = hi.abs();
        let rel = self.err / self.magnitude().max(f64::MIN_POSITIVE)
            + rhs.err / rhs.magnitude().max(f64::MIN_POSITIVE);
        Self {
            hi,
            lo,
            err: q * rel + 8.0 * DD_EPS * q,
        }
    }
}

impl Zero for Compensated {
    fn zero() -> Self {
        Self::ZERO
    }

    fn is_zero(&self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }
}

impl One for Compensated {
    fn one() -> Self {
        Self::ONE
    }
}

/// Neumaier's variant of Kahan summation in plain binary64.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.compensation += (self.sum - t) + v;
        } else {
            self.compensation += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// A number carried in one of the two precision modes.
#[derive(Debug, Clone, PartialEq)]
pub enum PrecisionValue {
    /// Always in lowest terms with a positive denominator.
    Exact(BigRational),
    Float(Compensated),
}

impl PrecisionValue {
    pub fn zero(mode: Precision) -> Self {
        match mode {
            Precision::Exact => Self::Exact(BigRational::zero()),
            Precision::Float => Self::Float(Compensated::ZERO),
        }
    }

    pub fn one(mode: Precision) -> Self {
        match mode {
            Precision::Exact => Self::Exact(BigRational::one()),
            Precision::Float => Self::Float(Compensated::ONE),
        }
    }

    pub fn mode(&self) -> Precision {
        match self {
            Self::Exact(_) => Precision::Exact,
            Self::Float(_) => Precision::Float,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Self::Exact(r) => Some(r),
            Self::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Self::Float(c) => c.value(),
        }
    }

    /// Tracked absolute error; zero for exact values.
    pub fn error_bound(&self) -> f64 {
        match self {
            Self::Exact(_) => 0.0,
            Self::Float(c) => c.error_bound(),
        }
    }

    /// Exact rational value of the stored representation.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Self::Exact(r) => r.clone(),
            Self::Float(c) => c.to_rational(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Exact(r) => r.is_zero(),
            Self::Float(c) => c.is_zero(),
        }
    }

    /// Sum of two values of the same mode.
    ///
    /// # Panics
    ///
    /// Panics when the modes differ.
    pub fn add(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Self::Exact(a), Self::Exact(b)) => Self::Exact(a + b),
            (Self::Float(a), Self::Float(b)) => Self::Float(*a + *b),
            _ => panic!("mixed precision modes"),
        }
    }

    /// Difference of two values of the same mode; panics when the modes differ.
    pub fn sub(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Self::Exact(a), Self::Exact(b)) => Self::Exact(a - b),
            (Self::Float(a), Self::Float(b)) => Self::Float(*a - *b),
            _ => panic!("mixed precision modes"),
        }
    }

    /// Product of two values of the same mode; panics when the modes differ.
    pub fn mul(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Self::Exact(a), Self::Exact(b)) => Self::Exact(a * b),
            (Self::Float(a), Self::Float(b)) => Self::Float(*a * *b),
            _ => panic!("mixed precision modes"),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Self::Exact(a) => Self::Exact(-a),
            Self::Float(a) => Self::Float(-*a),
        }
    }

    /// `"num/den"` for exact values (`"num"` when integral), otherwise the
    /// fixed-point decimal with `places` digits.
    pub fn display_string(&self, places: u32) -> String {
        match self {
            Self::Exact(r) => rational_string(r),
            Self::Float(_) => self.decimal(places),
        }
    }

    /// Fixed-point decimal rounded half-to-even.
    pub fn decimal(&self, places: u32) -> String {
        decimal_string(&self.to_rational(), places)
    }

    /// Scientific notation with `digits` significant digits, half-to-even.
    pub fn scientific(&self, digits: u32) -> String {
        scientific_string(&self.to_rational(), digits)
    }
}

impl fmt::Display for PrecisionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_string(14))
    }
}

/// Natural logarithm of a positive big integer.
pub fn ln_bigint(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().map_or(f64::NAN, f64::ln);
    }
    let shift = bits - 64;
    let top: BigInt = v >> shift;
    top.to_f64().map_or(f64::NAN, f64::ln) + shift as f64 * std::f64::consts::LN_2
}

pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `round_half_even(num / den)` for `den > 0`.
fn round_half_even(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_mod_floor(den);
    let twice: BigInt = r << 1usize;
    match twice.cmp(den) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), k as usize)
}

/// Fixed-point rendering of `r` with `places` fractional digits, half-to-even.
pub fn decimal_string(r: &BigRational, places: u32) -> String {
    let scaled = round_half_even(&(r.numer() * pow10(places)), r.denom());
    let negative = scaled.is_negative();
    let mut digits = scaled.abs().to_string();
    let places = places as usize;
    if digits.len() <= places {
        digits = format!("{}{}", "0".repeat(places + 1 - digits.len()), digits);
    }
    let (int_part, frac_part) = digits.split_at(digits.len() - places);
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Scientific rendering of `r` with `digits` significant digits, half-to-even.
pub fn scientific_string(r: &BigRational, digits: u32) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let approx = r.to_f64().map(f64::abs).filter(|v| v.is_finite() && *v > 0.0);
    let mut exp: i64 = approx.map(|v| v.log10().floor() as i64).unwrap_or(0);
    let lower = pow10(digits - 1);
    let upper = pow10(digits);
    loop {
        let shift = exp - i64::from(digits) + 1;
        let (num, den) = if shift >= 0 {
            (r.numer().clone(), r.denom() * pow10(shift as u32))
        } else {
            (r.numer() * pow10((-shift) as u32), r.denom().clone())
        };
        let mantissa = round_half_even(&num, &den);
        let abs = mantissa.abs();
        if abs >= upper {
            exp += 1;
            continue;
        }
        if abs < lower {
            exp -= 1;
            continue;
        }
        let text = abs.to_string();
        let sign = if mantissa.is_negative() { "-" } else { "" };
        let (lead, rest) = text.split_at(1);
        return if rest.is_empty() {
            format!("{sign}{lead}e{exp}")
        } else {
            format!("{sign}{lead}.{rest}e{exp}")
        };
    }
}
