//! Python bindings. Domain errors surface as `ValueError`.

use std::collections::HashMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use sincbound_core::constants::{self, Catalogue};
use sincbound_core::report::{build_report, constants_snapshot, Suite};
use sincbound_core::{means, quadrature, Error, Kernel, Mode, PrecisionConfig};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn precision(name: &str) -> PyResult<PrecisionConfig> {
    match name {
        "working" => Ok(PrecisionConfig::default()),
        "oracle" => Ok(PrecisionConfig::oracle()),
        other => Err(PyValueError::new_err(format!("precision must be 'working' or 'oracle', got {other:?}"))),
    }
}

#[pyfunction]
fn sinc(x: f64) -> f64 {
    Kernel::default().sinc(x)
}

#[pyfunction]
fn cos_power(p: f64, x: f64) -> PyResult<f64> {
    Kernel::default().cos_power(p, x).map_err(py_err)
}

#[pyfunction]
fn beta(p: f64, c: f64) -> PyResult<f64> {
    Kernel::default().beta(p, c).map_err(py_err)
}

/// `ln(sin x / x) - (1/p) ln cos px`
#[pyfunction]
fn f_p(p: f64, x: f64) -> PyResult<f64> {
    Kernel::default().f_p(p, x).map_err(py_err)
}

/// `ln(sin x / x) / ln cos px`
#[pyfunction]
fn f_ratio(p: f64, x: f64) -> PyResult<f64> {
    Kernel::default().f_ratio(p, x).map_err(py_err)
}

#[pyfunction]
fn sinhc_and_bound(u: f64) -> PyResult<(f64, f64)> {
    Kernel::default().sinhc_and_bound(u).map_err(py_err)
}

/// Returns `(value, residual, (bracket_lo, bracket_hi), iterations)`.
#[pyfunction]
#[pyo3(signature = (tol = 1e-13))]
fn solve_p0(tol: f64) -> PyResult<(f64, f64, (f64, f64), u32)> {
    let r = constants::solve_p0(tol).map_err(py_err)?;
    Ok((r.value, r.residual, (r.bracket_lo, r.bracket_hi), r.iterations))
}

#[pyfunction]
#[pyo3(signature = (precision = "working"))]
fn constant_catalogue(precision: &str) -> PyResult<HashMap<&'static str, f64>> {
    let cat: Catalogue<f64> = constants_snapshot(&self::precision(precision)?).map_err(py_err)?;
    Ok(cat.named().into_iter().collect())
}

#[pyfunction]
fn si(x: f64) -> PyResult<f64> {
    quadrature::si(x).map_err(py_err)
}

#[pyfunction]
fn catalan() -> f64 {
    quadrature::catalan_reference()
}

/// Returns `(lower, integral, upper, holds)`; `lower` is `inf` at `p = 1`.
#[pyfunction]
#[pyo3(signature = (p, tol = 1e-13))]
fn a1_enclosure(p: f64, tol: f64) -> PyResult<(f64, f64, f64, bool)> {
    let e = quadrature::a1_enclosure(p, tol).map_err(py_err)?;
    Ok((e.lower, e.integral, e.upper, e.holds))
}

#[pyfunction]
fn schwab_borchardt(a: f64, b: f64) -> PyResult<f64> {
    means::schwab_borchardt(a, b).map_err(py_err)
}

#[pyfunction]
fn a4_margin(t: f64) -> PyResult<f64> {
    means::a4_margin(t).map_err(py_err)
}

#[pyfunction]
fn a5_margin(a: f64, b: f64) -> PyResult<f64> {
    means::a5_margin(a, b).map_err(py_err)
}

/// Runs a suite and returns the machine report as a JSON string.
#[pyfunction]
#[pyo3(signature = (suite = "all", grid = 1024, tol = 1e-13, precision = "working"))]
fn verify(py: Python<'_>, suite: &str, grid: usize, tol: f64, precision: &str) -> PyResult<String> {
    let suite = match suite {
        "all" => Suite::All,
        "core" => Suite::Core,
        "applications" => Suite::Applications,
        "sharpness" => Suite::Sharpness,
        other => return Err(PyValueError::new_err(format!("unknown suite {other:?}"))),
    };
    let cfg = self::precision(precision)?;
    let doc = py.detach(|| build_report(suite, grid, tol, &cfg)).map_err(py_err)?;
    Ok(doc.to_json())
}

#[pymodule]
fn sincbound(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("WORKING", Mode::Working.as_str())?;
    m.add("ORACLE", Mode::Oracle.as_str())?;
    m.add_function(wrap_pyfunction!(sinc, m)?)?;
    m.add_function(wrap_pyfunction!(cos_power, m)?)?;
    m.add_function(wrap_pyfunction!(beta, m)?)?;
    m.add_function(wrap_pyfunction!(f_p, m)?)?;
    m.add_function(wrap_pyfunction!(f_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(sinhc_and_bound, m)?)?;
    m.add_function(wrap_pyfunction!(solve_p0, m)?)?;
    m.add_function(wrap_pyfunction!(constant_catalogue, m)?)?;
    m.add_function(wrap_pyfunction!(si, m)?)?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(a1_enclosure, m)?)?;
    m.add_function(wrap_pyfunction!(schwab_borchardt, m)?)?;
    m.add_function(wrap_pyfunction!(a4_margin, m)?)?;
    m.add_function(wrap_pyfunction!(a5_margin, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
