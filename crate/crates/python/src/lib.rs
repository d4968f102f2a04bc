//! Python bindings: the `tlwg` extension module.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyList;
use tlwg_core::algebra::{parse_rational, BigRational};
use tlwg_core::graph::{self, Policy};
use tlwg_core::jones_wenzl as jw;
use tlwg_core::json::{GramJson, TlElementJson};
use tlwg_core::oracle::Mode;
use tlwg_core::{diagram, nc2, oracle, Error, Pairing};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::VerificationFailure(msg) => PyRuntimeError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// A non-crossing pairing of `{1, ..., 2k}`.
#[pyclass(
    name = "Pairing",
    module = "tlwg",
    frozen,
    eq,
    ord,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct PyPairing(Pairing);

#[pymethods]
impl PyPairing {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyPairing).map_err(py_err)
    }

    /// From the 1-based partner list, `partners[i-1]` being the partner of `i`.
    #[staticmethod]
    fn from_partners(partners: Vec<usize>) -> PyResult<Self> {
        Pairing::from_partners(&partners)
            .map(PyPairing)
            .map_err(py_err)
    }

    #[staticmethod]
    fn identity(k: usize) -> PyResult<Self> {
        if k == 0 {
            return Err(py_err(Error::ZeroSize));
        }
        Ok(PyPairing(Pairing::identity(k)))
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    fn partners(&self) -> Vec<usize> {
        self.0.partners()
    }

    fn blocks(&self) -> Vec<(usize, usize)> {
        self.0.blocks()
    }

    /// Positions `t` with `{t, t+1}` a block.
    fn intervals(&self) -> Vec<usize> {
        self.0.interval_positions()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Pairing('{}')", self.0)
    }
}

fn pairing(obj: &Bound<'_, PyAny>) -> PyResult<Pairing> {
    if let Ok(p) = obj.extract::<PyRef<'_, PyPairing>>() {
        return Ok(p.0.clone());
    }
    let text: String = obj.extract()?;
    text.parse().map_err(py_err)
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    parse_rational(&obj.str()?.to_cow()?).map_err(py_err)
}

fn policy(name: &str) -> PyResult<Policy> {
    name.parse().map_err(py_err)
}

fn fraction<'py>(py: Python<'py>, x: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((x.to_string(),))
}

fn from_json<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyfunction]
fn enumerate_nc2(k: usize) -> PyResult<Vec<PyPairing>> {
    Ok(nc2::enumerate_nc2(k)
        .map_err(py_err)?
        .into_iter()
        .map(PyPairing)
        .collect())
}

#[pyfunction]
fn catalan(k: usize) -> u128 {
    nc2::catalan(k)
}

/// `|p ∨ q|`, the number of blocks of the join.
#[pyfunction]
fn join(p: &Bound<'_, PyAny>, q: &Bound<'_, PyAny>) -> PyResult<usize> {
    nc2::join_block_count(&pairing(p)?, &pairing(q)?).map_err(py_err)
}

#[pyfunction]
fn neighbors(p: &Bound<'_, PyAny>, t: usize) -> PyResult<Vec<PyPairing>> {
    let ns = nc2::neighbors_via_interval(&pairing(p)?, t).map_err(py_err)?;
    Ok(ns.into_iter().map(PyPairing).collect())
}

/// Returns `(loops, product)` for the stacked diagram `D_p D_q`.
#[pyfunction]
fn multiply(p: &Bound<'_, PyAny>, q: &Bound<'_, PyAny>) -> PyResult<(usize, PyPairing)> {
    let (loops, r) = diagram::diagram_multiply(&pairing(p)?, &pairing(q)?).map_err(py_err)?;
    Ok((loops, PyPairing(r)))
}

#[pyfunction]
fn gram<'py>(py: Python<'py>, k: usize) -> PyResult<Bound<'py, PyAny>> {
    let (ordering, entries) = diagram::gram_matrix(k).map_err(py_err)?;
    from_json(py, &GramJson::new(k, &ordering, &entries))
}

/// The Weingarten matrix as a dict; symbolic unless `at` is given.
#[pyfunction]
#[pyo3(signature = (k, at=None))]
fn weingarten<'py>(
    py: Python<'py>,
    k: usize,
    at: Option<&Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyAny>> {
    let mode = match at {
        Some(d) => Mode::Numeric(rational(d)?),
        None => Mode::Symbolic,
    };
    let w = py
        .detach(|| oracle::weingarten_exact(k, mode))
        .map_err(py_err)?;
    from_json(py, &w.to_json())
}

/// `Wg_d(p, q)` at a rational point, as a `Fraction`.
#[pyfunction]
fn weingarten_value<'py>(
    py: Python<'py>,
    p: &Bound<'py, PyAny>,
    q: &Bound<'py, PyAny>,
    d: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let (p, q, d) = (pairing(p)?, pairing(q)?, rational(d)?);
    if p.k() != q.k() {
        return Err(py_err(Error::SizeMismatch {
            left: p.k(),
            right: q.k(),
        }));
    }
    let w = py
        .detach(|| oracle::weingarten_exact(p.k(), Mode::Numeric(d)))
        .map_err(py_err)?;
    fraction(py, w.value(&p, &q).expect("same half-size"))
}

/// `{"k", "p", "q", "sign", "L", "m"}` with `m` as Python ints.
#[pyfunction]
#[pyo3(signature = (p, q, rmax, policy="A"))]
fn laurent_series<'py>(
    py: Python<'py>,
    p: &Bound<'py, PyAny>,
    q: &Bound<'py, PyAny>,
    rmax: usize,
    policy: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let s = graph::laurent_series(&pairing(p)?, &pairing(q)?, rmax, self::policy(policy)?)
        .map_err(py_err)?;
    let dict = from_json(py, &s)?;
    let int = py.import("builtins")?.getattr("int")?;
    let m = PyList::empty(py);
    for c in &s.m {
        m.append(int.call1((c.to_string(),))?)?;
    }
    dict.set_item("m", m)?;
    Ok(dict)
}

/// Partial sum of the Laurent series through `r = rmax` at `d`.
#[pyfunction]
#[pyo3(signature = (p, q, rmax, d, policy="A"))]
fn evaluate_series<'py>(
    py: Python<'py>,
    p: &Bound<'py, PyAny>,
    q: &Bound<'py, PyAny>,
    rmax: usize,
    d: &Bound<'py, PyAny>,
    policy: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let s = graph::laurent_series(&pairing(p)?, &pairing(q)?, rmax, self::policy(policy)?)
        .map_err(py_err)?;
    let value = graph::evaluate_series(&s, &rational(d)?, rmax).map_err(py_err)?;
    fraction(py, &value)
}

#[pyfunction]
fn geodesic_length(p: &Bound<'_, PyAny>, q: &Bound<'_, PyAny>) -> PyResult<usize> {
    graph::geodesic_length(&pairing(p)?, &pairing(q)?).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (p, q, policy="A"))]
fn export_dot(p: &Bound<'_, PyAny>, q: &Bound<'_, PyAny>, policy: &str) -> PyResult<String> {
    let g =
        graph::build_subgraph(&pairing(p)?, &pairing(q)?, self::policy(policy)?).map_err(py_err)?;
    Ok(graph::export_dot(&g))
}

/// `q_k` as `{"k", "terms": [{"pairing", "num", "den"}, ...]}`.
#[pyfunction]
fn jones_wenzl<'py>(py: Python<'py>, k: usize) -> PyResult<Bound<'py, PyAny>> {
    let q = py.detach(|| jw::jw_wenzl_recursion(k)).map_err(py_err)?;
    from_json(py, &TlElementJson::from(&q))
}

/// Runs the identity checks for `q_k`; raises `RuntimeError` on the first failure.
#[pyfunction]
fn verify_jw<'py>(py: Python<'py>, k: usize) -> PyResult<Bound<'py, PyAny>> {
    let report = py.detach(|| jw::verify_jw(k)).map_err(py_err)?;
    from_json(py, &report)
}

#[pyfunction]
fn haar_moment<'py>(
    py: Python<'py>,
    i: Vec<usize>,
    j: Vec<usize>,
    d: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let value = oracle::haar_moment(&i, &j, &rational(d)?).map_err(py_err)?;
    fraction(py, &value)
}

#[pymodule]
pub fn tlwg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPairing>()?;
    m.add_function(wrap_pyfunction!(enumerate_nc2, m)?)?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(join, m)?)?;
    m.add_function(wrap_pyfunction!(neighbors, m)?)?;
    m.add_function(wrap_pyfunction!(multiply, m)?)?;
    m.add_function(wrap_pyfunction!(gram, m)?)?;
    m.add_function(wrap_pyfunction!(weingarten, m)?)?;
    m.add_function(wrap_pyfunction!(weingarten_value, m)?)?;
    m.add_function(wrap_pyfunction!(laurent_series, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_series, m)?)?;
    m.add_function(wrap_pyfunction!(geodesic_length, m)?)?;
    m.add_function(wrap_pyfunction!(export_dot, m)?)?;
    m.add_function(wrap_pyfunction!(jones_wenzl, m)?)?;
    m.add_function(wrap_pyfunction!(verify_jw, m)?)?;
    m.add_function(wrap_pyfunction!(haar_moment, m)?)?;
    Ok(())
}
