//! Python bindings. Exact results come back as `fractions.Fraction`, float
//! results as `float`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use shellzeta_core::{self as core, BigInt, IntegerPolynomial, Precision, PrecisionValue};

fn value_error(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn precision(mode: &str) -> PyResult<Precision> {
    mode.parse().map_err(PyValueError::new_err)
}

fn to_py<'py>(py: Python<'py>, v: &PrecisionValue) -> PyResult<Bound<'py, PyAny>> {
    match v {
        PrecisionValue::Exact(r) => {
            let fraction = py.import("fractions")?.getattr("Fraction")?;
            fraction.call1((r.numer().clone(), r.denom().clone()))
        }
        PrecisionValue::Float(_) => Ok(v.to_f64().into_pyobject(py)?.into_any()),
    }
}

/// Integer-valued polynomial generator `f(n)`.
#[pyclass(name = "Polynomial", module = "shellzeta", frozen)]
pub struct PyPolynomial {
    inner: IntegerPolynomial,
}

#[pymethods]
impl PyPolynomial {
    /// `spec` is `"integers"`, `"shell:p"`, `"1,-3,3"` or a list of ascending coefficients.
    #[new]
    #[pyo3(signature = (spec, label = None))]
    fn new(spec: &Bound<'_, PyAny>, label: Option<String>) -> PyResult<Self> {
        let inner = if let Ok(text) = spec.extract::<String>() {
            text.parse::<IntegerPolynomial>().map_err(value_error)?
        } else {
            let coefficients: Vec<BigInt> = spec.extract()?;
            IntegerPolynomial::new(coefficients, "poly").map_err(value_error)?
        };
        Ok(Self {
            inner: match label {
                Some(label) => inner.with_label(label),
                None => inner,
            },
        })
    }

    #[staticmethod]
    fn shell(p: u32) -> PyResult<Self> {
        Ok(Self {
            inner: IntegerPolynomial::prime_shell(p).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn integers() -> Self {
        Self {
            inner: IntegerPolynomial::integers(),
        }
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn coefficients(&self) -> Vec<BigInt> {
        self.inner.coefficients().to_vec()
    }

    fn __call__(&self, n: u64) -> BigInt {
        self.inner.evaluate(n)
    }

    fn values(&self, x: u64) -> PyResult<Vec<BigInt>> {
        self.inner.values(x).map_err(value_error)
    }

    /// First `n <= x` with `f(n) < f(n-1)` (ignoring a leading pair of ones), or `None`.
    fn first_monotone_violation(&self, x: u64) -> Option<u64> {
        self.inner.validate_monotone(x).first_violation
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}', label='{}')", self.inner, self.inner.label())
    }
}

#[pyfunction]
#[pyo3(signature = (poly, x, s = 1.0, precision = "float"))]
fn zeta_partial<'py>(
    py: Python<'py>,
    poly: &PyPolynomial,
    x: u64,
    s: f64,
    precision: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let mode = self::precision(precision)?;
    to_py(
        py,
        &core::zeta_partial(&poly.inner, x, s, mode).map_err(value_error)?,
    )
}

#[pyfunction]
#[pyo3(signature = (poly, x, s = 1.0, precision = "float"))]
fn euler_product_partial<'py>(
    py: Python<'py>,
    poly: &PyPolynomial,
    x: u64,
    s: f64,
    precision: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let mode = self::precision(precision)?;
    let p = core::euler_product_partial(&poly.inner, x, s, mode).map_err(value_error)?;
    to_py(py, &p.value)
}

fn residual_dict<'py>(py: Python<'py>, r: &core::ResidualResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("label", &r.label)?;
    d.set_item("x", r.x)?;
    d.set_item("s", r.s)?;
    d.set_item("mode", r.mode.as_str())?;
    d.set_item("zeta_partial", to_py(py, &r.zeta_partial)?)?;
    d.set_item("product_partial", to_py(py, &r.product_partial)?)?;
    d.set_item("m_value", to_py(py, &r.m_value)?)?;
    d.set_item("start_index", r.start_index)?;
    d.set_item("empty_product", r.empty_product)?;
    Ok(d)
}

/// `M = Z P - 1` with its parts, as a dict.
#[pyfunction]
#[pyo3(signature = (poly, x, s = 1.0, precision = "float"))]
fn residual<'py>(
    py: Python<'py>,
    poly: &PyPolynomial,
    x: u64,
    s: f64,
    precision: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let mode = self::precision(precision)?;
    residual_dict(py, &core::residual(&poly.inner, x, s, mode).map_err(value_error)?)
}

#[pyfunction]
#[pyo3(signature = (poly, limits, s = 1.0, precision = "float"))]
fn residual_scan<'py>(
    py: Python<'py>,
    poly: &PyPolynomial,
    limits: Vec<u64>,
    s: f64,
    precision: &str,
) -> PyResult<Bound<'py, PyList>> {
    let mode = self::precision(precision)?;
    let results = core::residual_scan(&poly.inner, &limits, s, mode).map_err(value_error)?;
    let list = PyList::empty(py);
    for r in &results {
        list.append(residual_dict(py, r)?)?;
    }
    Ok(list)
}

#[pyfunction]
#[pyo3(signature = (poly, x, depth, precision = "float"))]
fn sigma_chain<'py>(
    py: Python<'py>,
    poly: &PyPolynomial,
    x: u64,
    depth: usize,
    precision: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let mode = self::precision(precision)?;
    to_py(
        py,
        &core::sigma_chain(&poly.inner, x, depth, mode)
            .map_err(value_error)?
            .value,
    )
}

/// Literal M-series terms, partial sum and deviation from `M`.
#[pyfunction]
#[pyo3(signature = (poly, x, depth = None, precision = "float"))]
fn mseries<'py>(
    py: Python<'py>,
    poly: &PyPolynomial,
    x: u64,
    depth: Option<usize>,
    precision: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let mode = self::precision(precision)?;
    let e = core::mseries_literal(&poly.inner, x, depth, mode).map_err(value_error)?;
    let terms = PyList::empty(py);
    for t in &e.terms {
        let term = PyDict::new(py);
        term.set_item("d", t.depth)?;
        term.set_item("sign", t.sign)?;
        term.set_item("magnitude", to_py(py, &t.magnitude)?)?;
        terms.append(term)?;
    }
    let d = PyDict::new(py);
    d.set_item("label", &e.label)?;
    d.set_item("x", e.x)?;
    d.set_item("depth", e.max_depth)?;
    d.set_item("terms", terms)?;
    d.set_item("partial_sum", to_py(py, &e.partial_sum)?)?;
    d.set_item("residual", to_py(py, &e.residual_reference)?)?;
    d.set_item("deviation", to_py(py, &e.deviation)?)?;
    d.set_item("cutoff_depth", e.cutoff_depth)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (poly, x, depth = None, precision = "float", tolerance = 1e-12))]
fn compare<'py>(
    py: Python<'py>,
    poly: &PyPolynomial,
    x: u64,
    depth: Option<usize>,
    precision: &str,
    tolerance: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let mode = self::precision(precision)?;
    let r = core::compare_to_residual(&poly.inner, x, depth, mode, tolerance).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("label", &r.label)?;
    d.set_item("x", r.x)?;
    d.set_item("depth", r.max_depth)?;
    d.set_item("full_depth", r.full_depth)?;
    d.set_item("partial_sum", to_py(py, &r.partial_sum)?)?;
    d.set_item("residual", to_py(py, &r.residual)?)?;
    d.set_item("deviation", to_py(py, &r.deviation)?)?;
    d.set_item("verdict", r.verdict.as_str())?;
    Ok(d)
}

#[pyfunction]
fn is_prime(n: BigInt) -> PyResult<bool> {
    core::primes::is_prime_big(&n).map_err(value_error)
}

#[pyfunction]
fn log_density_sum(poly: &PyPolynomial, x: u64) -> PyResult<f64> {
    Ok(core::log_density_sum(&poly.inner, x).map_err(value_error)?.value)
}

/// Prime count, log density and the `n` with prime `f(n)`.
#[pyfunction]
fn census<'py>(py: Python<'py>, poly: &PyPolynomial, x: u64) -> PyResult<Bound<'py, PyDict>> {
    let c = core::census(&poly.inner, x, true).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("label", &c.label)?;
    d.set_item("x", c.x)?;
    d.set_item("prime_count", c.prime_count)?;
    d.set_item("log_density_sum", c.log_density_sum)?;
    d.set_item("log_density_skipped", c.log_density_skipped)?;
    d.set_item("witnesses", c.witnesses)?;
    Ok(d)
}

#[pymodule]
fn shellzeta(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_function(wrap_pyfunction!(zeta_partial, m)?)?;
    m.add_function(wrap_pyfunction!(euler_product_partial, m)?)?;
    m.add_function(wrap_pyfunction!(residual, m)?)?;
    m.add_function(wrap_pyfunction!(residual_scan, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_chain, m)?)?;
    m.add_function(wrap_pyfunction!(mseries, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(log_density_sum, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    Ok(())
}
