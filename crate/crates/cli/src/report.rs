//! Table, figure and single-shot commands. Everything here returns data;
//! rendering and I/O live in [`crate::render`] and the binary.

use std::thread;

use serde::Serialize;
use serde_json::{json, Value};
use shellzeta_core::mseries::DEFAULT_TOLERANCE;
use shellzeta_core::primes::{count_primes_by_trial_division, prime_witnesses};
use shellzeta_core::{
    compare_to_residual, log_density_sum, mseries_literal, residual, residual_scan, IntegerPolynomial,
    PrecisionValue, ResidualResult,
};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::published::{self, LOG_DENSITY_TOLERANCE, M_TOLERANCE};

pub const DECIMAL_PLACES: u32 = 14;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub label: String,
    #[serde(serialize_with = "as_string")]
    pub x: u64,
    #[serde(serialize_with = "as_string")]
    pub prime_count: u64,
    pub log_density_sum: String,
    pub m_value: String,
    pub mode: String,
    /// `"p/q"` when computed exactly.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_exact: Option<String>,
    pub flags: Vec<String>,
}

fn as_string<S: serde::Serializer>(v: &u64, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.collect_str(v)
}

/// Census plus residual for one polynomial over every limit.
fn table_rows(poly: &IntegerPolynomial, config: &RunConfig) -> Result<Vec<TableRow>, CliError> {
    let Some(&max_x) = config.limits.last() else {
        return Ok(Vec::new());
    };
    let witnesses = prime_witnesses(poly, max_x)?;
    let checked = count_primes_by_trial_division(poly, max_x)?;
    let residuals = residual_scan(poly, &config.limits, config.s, config.precision)?;

    let mut rows = Vec::with_capacity(config.limits.len());
    for (&x, r) in config.limits.iter().zip(residuals) {
        let prime_count = witnesses.iter().filter(|&&n| n <= x).count() as u64;
        let density = log_density_sum(poly, x)?;
        let m_value = r.m_value.decimal(DECIMAL_PLACES);
        let mut flags = Vec::new();

        if x == max_x && checked != witnesses.len() as u64 {
            flags.push(format!("trial_division_count={checked}"));
        }
        if r.empty_product {
            flags.push("empty_product".to_string());
        }
        if !density.skipped.is_empty() {
            flags.push(format!("log_terms_skipped={}", density.skipped.len()));
        }
        if let Some(cell) = published::lookup(poly.label(), x).filter(|_| config.s == 1.0) {
            if cell.prime_count != prime_count {
                flags.push(format!("prime_count_differs_from={}", cell.prime_count));
            }
            if (cell.log_density_sum - density.value).abs() > LOG_DENSITY_TOLERANCE {
                flags.push(format!("log_density_differs_from={}", cell.log_density_sum));
            }
            let reference: f64 = cell.m_value.parse().expect("tabulated value");
            if (reference - r.m_value.to_f64()).abs() > M_TOLERANCE {
                flags.push(format!("m_value_differs_from={}", cell.m_value));
            }
        }

        rows.push(TableRow {
            label: poly.label().to_string(),
            x,
            prime_count,
            log_density_sum: format!("{:.5}", density.value),
            m_value,
            mode: r.mode.as_str().to_string(),
            m_exact: r
                .m_value
                .as_exact()
                .map(|_| r.m_value.display_string(DECIMAL_PLACES)),
            flags,
        });
    }
    Ok(rows)
}

/// Runs `table_rows` for each polynomial on its own thread, keeping order.
fn parallel_rows(polys: &[IntegerPolynomial], config: &RunConfig) -> Result<Vec<TableRow>, CliError> {
    let results: Vec<Result<Vec<TableRow>, CliError>> = thread::scope(|scope| {
        let handles: Vec<_> = polys
            .iter()
            .map(|poly| scope.spawn(move || table_rows(poly, config)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("table worker panicked"))
            .collect()
    });
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    Ok(rows)
}

fn shells(powers: &[u32]) -> Result<Vec<IntegerPolynomial>, CliError> {
    powers
        .iter()
        .map(|&p| IntegerPolynomial::prime_shell(p).map_err(CliError::from))
        .collect()
}

/// The integer row `f(n) = n`.
pub fn cmd_table1(config: &RunConfig) -> Result<Vec<TableRow>, CliError> {
    table_rows(&IntegerPolynomial::integers(), config)
}

/// One row group per prime shell.
pub fn cmd_table2(config: &RunConfig) -> Result<Vec<TableRow>, CliError> {
    parallel_rows(&shells(&config.powers)?, config)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigurePoint {
    pub label: String,
    #[serde(serialize_with = "as_string")]
    pub x: u64,
    pub m_value: String,
}

/// Long-format series: the integers first, then each shell.
pub fn cmd_figure_data(config: &RunConfig) -> Result<Vec<FigurePoint>, CliError> {
    let mut series = vec![IntegerPolynomial::integers()];
    series.extend(shells(&config.powers)?);
    let scans: Vec<Result<Vec<ResidualResult>, CliError>> = thread::scope(|scope| {
        let handles: Vec<_> = series
            .iter()
            .map(|poly| {
                scope.spawn(move || {
                    residual_scan(poly, &config.limits, config.s, config.precision).map_err(CliError::from)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("figure worker panicked"))
            .collect()
    });
    let mut points = Vec::new();
    for scan in scans {
        points.extend(scan?.into_iter().map(|r| FigurePoint {
            label: r.label,
            x: r.x,
            m_value: r.m_value.decimal(DECIMAL_PLACES),
        }));
    }
    Ok(points)
}

fn required_poly(config: &RunConfig) -> Result<IntegerPolynomial, CliError> {
    let spec = config
        .poly
        .as_deref()
        .ok_or_else(|| CliError::Input("a polynomial is required (--poly SPEC)".into()))?;
    Ok(spec.parse()?)
}

fn single_x(config: &RunConfig) -> Result<u64, CliError> {
    match config.limits.as_slice() {
        [x] => Ok(*x),
        _ => Err(CliError::Input("exactly one limit is required (--x N)".into())),
    }
}

fn number(v: &PrecisionValue) -> Value {
    match v {
        PrecisionValue::Exact(r) => json!({
            "value": v.display_string(DECIMAL_PLACES),
            "numerator": r.numer().to_string(),
            "denominator": r.denom().to_string(),
            "decimal": v.decimal(DECIMAL_PLACES),
        }),
        PrecisionValue::Float(_) => json!({
            "value": v.decimal(DECIMAL_PLACES),
            "scientific": v.scientific(DECIMAL_PLACES),
            "error_bound": format!("{:e}", v.error_bound()),
        }),
    }
}

pub fn cmd_residual(config: &RunConfig) -> Result<Value, CliError> {
    let poly = required_poly(config)?;
    let r = residual(&poly, single_x(config)?, config.s, config.precision)?;
    Ok(json!({
        "label": r.label,
        "x": r.x.to_string(),
        "s": r.s.to_string(),
        "mode": r.mode.as_str(),
        "zeta_partial": number(&r.zeta_partial),
        "product_partial": number(&r.product_partial),
        "m_value": number(&r.m_value),
        "start_index": r.start_index.map(|n| n.to_string()),
        "empty_product": r.empty_product,
    }))
}

fn require_unit_exponent(config: &RunConfig) -> Result<(), CliError> {
    if config.s != 1.0 {
        return Err(CliError::Input(
            "the M-series is only defined here for s = 1".into(),
        ));
    }
    Ok(())
}

pub fn cmd_mseries(config: &RunConfig) -> Result<Value, CliError> {
    require_unit_exponent(config)?;
    let poly = required_poly(config)?;
    let e = mseries_literal(
        &poly,
        single_x(config)?,
        config.depth.as_option(),
        config.precision,
    )?;
    let terms: Vec<Value> = e
        .terms
        .iter()
        .map(|t| {
            json!({
                "d": t.depth,
                "sign": t.sign,
                "magnitude": number(&t.magnitude),
            })
        })
        .collect();
    Ok(json!({
        "label": e.label,
        "x": e.x.to_string(),
        "depth": e.max_depth,
        "mode": config.precision.as_str(),
        "start_index": e.start_index.to_string(),
        "terms": terms,
        "partial_sum": number(&e.partial_sum),
        "residual": number(&e.residual_reference),
        "deviation": number(&e.deviation),
        "cutoff_depth": e.cutoff_depth,
    }))
}

pub fn cmd_compare(config: &RunConfig) -> Result<Value, CliError> {
    require_unit_exponent(config)?;
    let poly = required_poly(config)?;
    let r = compare_to_residual(
        &poly,
        single_x(config)?,
        config.depth.as_option(),
        config.precision,
        DEFAULT_TOLERANCE,
    )?;
    Ok(json!({
        "label": r.label,
        "x": r.x.to_string(),
        "depth": r.max_depth,
        "full_depth": r.full_depth,
        "mode": r.mode.as_str(),
        "partial_sum": number(&r.partial_sum),
        "residual": number(&r.residual),
        "deviation": number(&r.deviation),
        "tolerance": format!("{:e}", r.tolerance),
        "cutoff_depth": r.cutoff_depth,
        "verdict": r.verdict.as_str(),
    }))
}
