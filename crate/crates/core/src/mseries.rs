//! The nested alternating M-series, truncated at a domain limit.
//!
//! With `a_n = 1/f(n)` and `n0` the first index with `f(n) >= 2`, the depth-`d`
//! magnitude is
//!
//! ```text
//! sigma_d = sum over n0 <= i <= j < k_1 < ... < k_{d-2} <= x of a_i a_j a_k1 ... a_k(d-2)
//! ```
//!
//! (the first two indices may coincide, every later one strictly increases), and
//! the series is `sum_{d>=2} (-1)^(d-1) sigma_d`. The series is evaluated as
//! written and compared against the residual `Z P - 1`; the two differ, and
//! [`compare_to_residual`] reports by how much.
//!
//! `sigma_d` is computed with a suffix recurrence over elementary symmetric
//! sums of the tail, `E_m(t) = E_m(t+1) + a_t E_{m-1}(t+1)`, `E_0 = 1`, giving
//! all depths up to `D` in `O(x D)`.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polynomial::IntegerPolynomial;
use crate::precision::{Compensated, Precision, PrecisionValue};
use crate::residual::residual;

/// Default `|deviation|` threshold for a [`Verdict::Match`].
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Float-mode expansion stops after two consecutive terms below this fraction
/// of the running partial sum.
pub const TERM_CUTOFF: f64 = 1e-16;

pub const ENUMERATION_MAX_X: u64 = 12;
pub const ENUMERATION_MAX_DEPTH: usize = 8;
pub const EXPANSION_MAX_X: u64 = 16;

/// Unsigned depth-`d` magnitude.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainMagnitude {
    pub depth: usize,
    pub value: PrecisionValue,
    /// No chain of this depth fits below `x`; `value` is exactly zero.
    pub beyond_support: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DepthTerm {
    pub depth: usize,
    /// `(-1)^(depth - 1)`.
    pub sign: i8,
    pub magnitude: PrecisionValue,
    pub beyond_support: bool,
}

impl DepthTerm {
    fn new(chain: ChainMagnitude) -> Self {
        Self {
            depth: chain.depth,
            sign: depth_sign(chain.depth),
            magnitude: chain.value,
            beyond_support: chain.beyond_support,
        }
    }

    pub fn signed(&self) -> PrecisionValue {
        if self.sign < 0 {
            self.magnitude.neg()
        } else {
            self.magnitude.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MSeriesExpansion {
    pub label: String,
    pub x: u64,
    pub max_depth: usize,
    /// Lowest index of every chain (`n0`).
    pub start_index: u64,
    pub terms: Vec<DepthTerm>,
    pub partial_sum: PrecisionValue,
    /// `M = Z P - 1` at the same `x`, `s = 1`.
    pub residual_reference: PrecisionValue,
    /// `residual_reference - partial_sum`: what the truncated series misses.
    pub deviation: PrecisionValue,
    /// Depth at which float-mode iteration stopped early.
    pub cutoff_depth: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Match,
    SystematicGap,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "MATCH",
            Verdict::SystematicGap => "SYSTEMATIC_GAP",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeviationReport {
    pub label: String,
    pub x: u64,
    pub max_depth: usize,
    /// `max_depth` reached the longest chain that fits below `x`.
    pub full_depth: bool,
    pub mode: Precision,
    pub partial_sum: PrecisionValue,
    pub residual: PrecisionValue,
    pub deviation: PrecisionValue,
    pub cutoff_depth: Option<usize>,
    pub tolerance: f64,
    pub verdict: Verdict,
}

/// Exact term-by-term expansion of `Z(x) P(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpandedResidual {
    /// `Z P - 1`.
    pub value: BigRational,
    /// Signed sum of all expanded products with `k` reciprocal factors, for
    /// `k = 0, 1, ...`; entry 0 has the leading 1 removed.
    pub by_degree: Vec<BigRational>,
}

pub(crate) fn depth_sign(depth: usize) -> i8 {
    if depth.is_multiple_of(2) {
        -1
    } else {
        1
    }
}

trait Ring: Clone + Zero + One + Add<Output = Self> + Mul<Output = Self> {}
impl<T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>> Ring for T {}

/// `sigma_2, sigma_3, ...` for `a = [a_n0, ..., a_x]`, stopping after
/// `max_depth` or when `keep_going(depth, &sigma)` returns false.
fn chain_magnitudes<T: Ring>(
    a: &[T],
    max_depth: usize,
    mut keep_going: impl FnMut(usize, &T) -> bool,
) -> Vec<T> {
    let k = a.len();
    let mut out = Vec::new();
    // tail[t] = E_m(t), elementary symmetric sum of degree m over a[t..].
    let mut tail = vec![T::one(); k + 1];
    for depth in 2..=max_depth {
        if depth > 2 {
            let mut next = vec![T::zero(); k + 1];
            for t in (0..k).rev() {
                next[t] = next[t + 1].clone() + a[t].clone() * tail[t + 1].clone();
            }
            tail = next;
        }
        let mut suffix = T::zero();
        let mut sigma = T::zero();
        for t in (0..k).rev() {
            suffix = suffix + a[t].clone() * tail[t + 1].clone();
            sigma = sigma + a[t].clone() * suffix.clone();
        }
        let go_on = keep_going(depth, &sigma);
        out.push(sigma);
        if !go_on {
            break;
        }
    }
    out
}

/// Chain indices `n0..=x` and their reciprocals.
struct ChainSupport {
    start_index: u64,
    values: Vec<BigInt>,
}

impl ChainSupport {
    fn new(poly: &IntegerPolynomial, x: u64) -> Result<Self> {
        if x < 2 {
            return Err(Error::LimitTooSmall { x, min: 2 });
        }
        poly.require_monotone(x)?;
        let all = poly.values(x)?;
        let start = all
            .iter()
            .position(|v| !v.is_one())
            .ok_or_else(|| Error::NoAdmissibleTerms {
                label: poly.label().to_string(),
                x,
            })?;
        Ok(Self {
            start_index: start as u64 + 1,
            values: all[start..].to_vec(),
        })
    }

    /// Longest chain: `i = j = n0` followed by every remaining index.
    fn full_depth(&self) -> usize {
        self.values.len() + 1
    }

    fn exact(&self) -> Vec<BigRational> {
        self.values
            .iter()
            .map(|v| BigRational::new(BigInt::one(), v.clone()))
            .collect()
    }

    /// Exact magnitudes via integer numerators over `D = prod f(n)`: running the
    /// recurrence on `D a_n` yields `D^d sigma_d`, reduced once per depth.
    fn exact_magnitudes(&self, max_depth: usize) -> Vec<BigRational> {
        let den = self.values.iter().fold(BigInt::one(), |acc, v| acc * v);
        let scaled: Vec<BigInt> = self.values.iter().map(|v| &den / v).collect();
        let mut den_power = den.clone();
        chain_magnitudes(&scaled, max_depth, |_, _| true)
            .into_iter()
            .map(|numer| {
                den_power *= &den;
                BigRational::new(numer, den_power.clone())
            })
            .collect()
    }

    fn float(&self) -> Vec<Compensated> {
        self.values
            .iter()
            .map(|v| Compensated::from_bigint(v).recip())
            .collect()
    }
}

/// Longest `d` with a nonzero `sigma_d` at this `x`.
pub fn full_depth(poly: &IntegerPolynomial, x: u64) -> Result<usize> {
    Ok(ChainSupport::new(poly, x)?.full_depth())
}

/// Unsigned depth-`depth` magnitude `sigma_depth`.
pub fn sigma_chain(
    poly: &IntegerPolynomial,
    x: u64,
    depth: usize,
    mode: Precision,
) -> Result<ChainMagnitude> {
    if depth < 2 {
        return Err(Error::DepthTooSmall(depth));
    }
    let support = ChainSupport::new(poly, x)?;
    if depth > support.full_depth() {
        return Ok(ChainMagnitude {
            depth,
            value: PrecisionValue::zero(mode),
            beyond_support: true,
        });
    }
    let value = match mode {
        Precision::Exact => PrecisionValue::Exact(support.exact_magnitudes(depth).pop().expect("depth >= 2")),
        Precision::Float => PrecisionValue::Float(
            chain_magnitudes(&support.float(), depth, |_, _| true)
                .pop()
                .expect("depth >= 2"),
        ),
    };
    Ok(ChainMagnitude {
        depth,
        value,
        beyond_support: false,
    })
}

fn assemble(
    poly: &IntegerPolynomial,
    x: u64,
    max_depth: usize,
    start_index: u64,
    terms: Vec<DepthTerm>,
    cutoff_depth: Option<usize>,
    mode: Precision,
) -> Result<MSeriesExpansion> {
    let partial_sum = terms
        .iter()
        .fold(PrecisionValue::zero(mode), |acc, t| acc.add(&t.signed()));
    let residual_reference = residual(poly, x, 1.0, mode)?.m_value;
    let deviation = residual_reference.sub(&partial_sum);
    Ok(MSeriesExpansion {
        label: poly.label().to_string(),
        x,
        max_depth,
        start_index,
        terms,
        partial_sum,
        residual_reference,
        deviation,
        cutoff_depth,
    })
}

fn zero_tail(from: usize, to: usize, mode: Precision) -> impl Iterator<Item = DepthTerm> {
    (from..=to).map(move |depth| {
        DepthTerm::new(ChainMagnitude {
            depth,
            value: PrecisionValue::zero(mode),
            beyond_support: true,
        })
    })
}

/// `sum_{d=2}^{max_depth} (-1)^(d-1) sigma_d` with per-depth terms.
///
/// `max_depth = None` means full depth. Depths past the longest chain are
/// recorded as exact zeros. In float mode iteration may stop early (see
/// [`TERM_CUTOFF`]); exact mode never does.
pub fn mseries_literal(
    poly: &IntegerPolynomial,
    x: u64,
    max_depth: Option<usize>,
    mode: Precision,
) -> Result<MSeriesExpansion> {
    let support = ChainSupport::new(poly, x)?;
    let full = support.full_depth();
    let max_depth = max_depth.unwrap_or(full);
    if max_depth < 2 {
        return Err(Error::DepthTooSmall(max_depth));
    }
    let computed = max_depth.min(full);
    let mut cutoff_depth = None;
    let mut terms: Vec<DepthTerm> = match mode {
        Precision::Exact => support
            .exact_magnitudes(computed)
            .into_iter()
            .map(PrecisionValue::Exact)
            .collect::<Vec<_>>(),
        Precision::Float => {
            let mut partial = 0.0_f64;
            let mut small_run = 0;
            chain_magnitudes(&support.float(), computed, |depth, sigma| {
                let m = sigma.value();
                partial += f64::from(depth_sign(depth)) * m;
                small_run = if m < TERM_CUTOFF * partial.abs() {
                    small_run + 1
                } else {
                    0
                };
                if small_run >= 2 {
                    cutoff_depth = Some(depth);
                    false
                } else {
                    true
                }
            })
            .into_iter()
            .map(PrecisionValue::Float)
            .collect()
        }
    }
    .into_iter()
    .enumerate()
    .map(|(i, value)| {
        DepthTerm::new(ChainMagnitude {
            depth: i + 2,
            value,
            beyond_support: false,
        })
    })
    .collect();
    if cutoff_depth.is_none() {
        terms.extend(zero_tail(computed + 1, max_depth, mode));
    }
    assemble(poly, x, max_depth, support.start_index, terms, cutoff_depth, mode)
}

/// Same contract as [`mseries_literal`] in exact mode, by explicit enumeration
/// of every index tuple. Exponential; limited to `x <= 12`, `max_depth <= 8`.
pub fn enumerate_oracle(poly: &IntegerPolynomial, x: u64, max_depth: usize) -> Result<MSeriesExpansion> {
    if x > ENUMERATION_MAX_X || max_depth > ENUMERATION_MAX_DEPTH {
        return Err(Error::LimitsTooLarge {
            x,
            max_x: ENUMERATION_MAX_X,
            depth: max_depth,
            max_depth: ENUMERATION_MAX_DEPTH,
        });
    }
    if max_depth < 2 {
        return Err(Error::DepthTooSmall(max_depth));
    }
    let support = ChainSupport::new(poly, x)?;
    let a = support.exact();
    let mut sums = vec![BigRational::zero(); max_depth + 1];
    let mut hits = vec![false; max_depth + 1];

    fn extend(
        a: &[BigRational],
        last: usize,
        depth: usize,
        product: &BigRational,
        max_depth: usize,
        sums: &mut [BigRational],
        hits: &mut [bool],
    ) {
        sums[depth] += product;
        hits[depth] = true;
        if depth == max_depth {
            return;
        }
        for k in last + 1..a.len() {
            extend(a, k, depth + 1, &(product * &a[k]), max_depth, sums, hits);
        }
    }

    for i in 0..a.len() {
        for j in i..a.len() {
            extend(&a, j, 2, &(&a[i] * &a[j]), max_depth, &mut sums, &mut hits);
        }
    }
    let terms = (2..=max_depth)
        .map(|depth| {
            DepthTerm::new(ChainMagnitude {
                depth,
                value: PrecisionValue::Exact(sums[depth].clone()),
                beyond_support: !hits[depth],
            })
        })
        .collect();
    assemble(
        poly,
        x,
        max_depth,
        support.start_index,
        terms,
        None,
        Precision::Exact,
    )
}

/// Expands `Z(x) * prod (1 - a_n)` into its individual signed products, the
/// way the terms are eliminated one factor at a time, and sums them exactly.
///
/// Every subset `S` of the product indices contributes `(-1)^|S| prod_S a`,
/// distributed over every term of `Z`. Independent of the residual engine's
/// multiply-then-subtract route. Limited to `x <= 16`.
pub fn expansion_oracle(poly: &IntegerPolynomial, x: u64) -> Result<ExpandedResidual> {
    if x > EXPANSION_MAX_X {
        return Err(Error::LimitsTooLarge {
            x,
            max_x: EXPANSION_MAX_X,
            depth: 0,
            max_depth: 0,
        });
    }
    if x < 1 {
        return Err(Error::LimitTooSmall { x, min: 1 });
    }
    poly.require_monotone(x)?;
    let values = poly.values(x)?;
    let factors: Vec<&BigInt> = match values.iter().position(|v| !v.is_one()) {
        Some(start) => values[start..].iter().collect(),
        None => Vec::new(),
    };

    // Common denominator: product of all factor values times lcm of Z's denominators.
    let product_den = factors.iter().fold(BigInt::one(), |acc, v| acc * *v);
    let sum_den = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v));
    // (numerator weight, number of reciprocal factors) per term of Z.
    let mut z_terms: Vec<(BigInt, usize)> = Vec::with_capacity(values.len() + 1);
    if !values[0].is_one() {
        z_terms.push((sum_den.clone(), 0));
    }
    for v in &values {
        z_terms.push((&sum_den / v, usize::from(!v.is_one())));
    }

    let mut by_degree = vec![BigInt::zero(); factors.len() + 2];

    // Depth-first over subsets; `weight` = product_den / prod_S f.
    fn visit(
        factors: &[&BigInt],
        next: usize,
        size: usize,
        weight: &BigInt,
        z_terms: &[(BigInt, usize)],
        by_degree: &mut [BigInt],
    ) {
        let sign_negative = size % 2 == 1;
        for (w, deg) in z_terms {
            let term = weight * w;
            if sign_negative {
                by_degree[size + deg] -= term;
            } else {
                by_degree[size + deg] += term;
            }
        }
        for i in next..factors.len() {
            visit(
                factors,
                i + 1,
                size + 1,
                &(weight / factors[i]),
                z_terms,
                by_degree,
            );
        }
    }
    visit(&factors, 0, 0, &product_den, &z_terms, &mut by_degree);

    let den = product_den * sum_den;
    by_degree[0] -= &den;
    let total: BigInt = by_degree.iter().sum();
    Ok(ExpandedResidual {
        value: BigRational::new(total, den.clone()),
        by_degree: by_degree
            .into_iter()
            .map(|n| BigRational::new(n, den.clone()))
            .collect(),
    })
}

/// Literal series against the residual at the same `x`.
pub fn compare_to_residual(
    poly: &IntegerPolynomial,
    x: u64,
    max_depth: Option<usize>,
    mode: Precision,
    tolerance: f64,
) -> Result<DeviationReport> {
    let expansion = mseries_literal(poly, x, max_depth, mode)?;
    let full = full_depth(poly, x)?;
    let magnitude = match &expansion.deviation {
        PrecisionValue::Exact(r) => r.abs().to_f64().unwrap_or(f64::INFINITY),
        PrecisionValue::Float(c) => c.value().abs(),
    };
    let verdict = if magnitude <= tolerance {
        Verdict::Match
    } else {
        Verdict::SystematicGap
    };
    Ok(DeviationReport {
        label: expansion.label,
        x,
        max_depth: expansion.max_depth,
        full_depth: expansion.max_depth >= full || expansion.cutoff_depth.is_some(),
        mode,
        partial_sum: expansion.partial_sum,
        residual: expansion.residual_reference,
        deviation: expansion.deviation,
        cutoff_depth: expansion.cutoff_depth,
        tolerance,
        verdict,
    })
}
