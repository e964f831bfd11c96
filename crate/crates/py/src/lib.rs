//! Python extension module exposing the operator-comparison toolkit.

use polydom::domination::{decide_matrix, lsc_hypothesis_check};
use polydom::probe::{default_ray_schedule, ratio_estimate, ray_oscillation_probe, ProbeParams};
use polydom::report::{domination_value, lsc_value, probe_value};
use polydom::scalar_dom::{DecisionConfig, Mode};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn to_py_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<PyObject> {
    use serde_json::Value::*;
    Ok(match v {
        Null => py.None(),
        Bool(b) => b.into_pyobject(py)?.to_owned().unbind().into(),
        Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.unbind().into()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.unbind().into()
            }
        }
        String(s) => s.into_pyobject(py)?.unbind().into(),
        Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.unbind().into()
        }
        Object(map) => {
            let dict = PyDict::new(py);
            for (k, val) in map {
                dict.set_item(k, json_to_py(py, val)?)?;
            }
            dict.unbind().into()
        }
    })
}

/// A scalar polynomial with exact Gaussian-rational coefficients.
#[pyclass(name = "ScalarPoly")]
#[derive(Clone)]
struct PyScalarPoly {
    inner: polydom::ScalarPoly,
}

#[pymethods]
impl PyScalarPoly {
    #[new]
    #[pyo3(signature = (text, dim=None))]
    fn new(text: &str, dim: Option<usize>) -> PyResult<Self> {
        Ok(Self {
            inner: polydom::parse_scalar_str(text, dim).map_err(to_py_err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_canonical_string()
    }

    fn __repr__(&self) -> String {
        format!("ScalarPoly({:?})", self.inner.to_canonical_string())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn degree(&self) -> Option<u32> {
        self.inner.degree()
    }

    /// Squared weight function: sum over alpha of |d^alpha p|^2.
    fn tilde_squared(&self) -> Self {
        Self {
            inner: self.inner.tilde_squared(),
        }
    }
}

/// A rectangular matrix of scalar polynomials.
#[pyclass(name = "MatrixPoly")]
#[derive(Clone)]
struct PyMatrixPoly {
    inner: polydom::MatrixPoly,
}

#[pymethods]
impl PyMatrixPoly {
    #[new]
    #[pyo3(signature = (text, dim=None))]
    fn new(text: &str, dim: Option<usize>) -> PyResult<Self> {
        Ok(Self {
            inner: polydom::parse_matrix_str(text, dim).map_err(to_py_err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_canonical_string()
    }

    fn __repr__(&self) -> String {
        format!("MatrixPoly({:?})", self.inner.to_canonical_string())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        (self.inner.rows(), self.inner.cols())
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Exact pseudoinverse representation: (A, Delta, rank) with
    /// P^+ = A / Delta wherever Delta != 0.
    fn pinv(&self) -> PyResult<(PyMatrixPoly, PyScalarPoly, usize)> {
        let rep = self.inner.pseudoinverse().map_err(to_py_err)?;
        Ok((
            PyMatrixPoly { inner: rep.a },
            PyScalarPoly { inner: rep.delta },
            rep.rank,
        ))
    }
}

fn harmonized(p: &PyMatrixPoly, q: &PyMatrixPoly) -> (polydom::MatrixPoly, polydom::MatrixPoly) {
    let d = p.inner.dim().max(q.inner.dim());
    (p.inner.promote_dim(d), q.inner.promote_dim(d))
}

fn run_decider(
    py: Python<'_>,
    p: &PyMatrixPoly,
    q: &PyMatrixPoly,
    mode: Mode,
    seed: u64,
) -> PyResult<PyObject> {
    let (pm, qm) = harmonized(p, q);
    let config = DecisionConfig {
        seed,
        ..DecisionConfig::default()
    };
    let report = decide_matrix(&pm, &qm, mode, &config, None).map_err(to_py_err)?;
    json_to_py(py, &domination_value(&report))
}

/// Decides whether P dominates Q; returns the full report as a dict.
#[pyfunction]
#[pyo3(signature = (p, q, seed=0))]
fn dominates(py: Python<'_>, p: &PyMatrixPoly, q: &PyMatrixPoly, seed: u64) -> PyResult<PyObject> {
    run_decider(py, p, q, Mode::Strict, seed)
}

/// Decides whether P compactly dominates Q; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (p, q, seed=0))]
fn compactly_dominates(
    py: Python<'_>,
    p: &PyMatrixPoly,
    q: &PyMatrixPoly,
    seed: u64,
) -> PyResult<PyObject> {
    run_decider(py, p, q, Mode::Compact, seed)
}

/// Checks compact domination of every derivative operator of P.
#[pyfunction]
#[pyo3(signature = (p, seed=0))]
fn lsc_check(py: Python<'_>, p: &PyMatrixPoly, seed: u64) -> PyResult<PyObject> {
    let config = DecisionConfig {
        seed,
        ..DecisionConfig::default()
    };
    let report = lsc_hypothesis_check(&p.inner, &config).map_err(to_py_err)?;
    json_to_py(py, &lsc_value(&report))
}

/// Empirical L2-ratio probe over random localized test functions.
#[pyfunction]
#[pyo3(signature = (p, q, trials=20, grid=128, seed=0, ray=None))]
fn probe(
    py: Python<'_>,
    p: &PyMatrixPoly,
    q: &PyMatrixPoly,
    trials: usize,
    grid: usize,
    seed: u64,
    ray: Option<Vec<f64>>,
) -> PyResult<PyObject> {
    let (pm, qm) = harmonized(p, q);
    let params = ProbeParams {
        n: grid,
        ..ProbeParams::default()
    };
    let report = match ray {
        Some(v) => ray_oscillation_probe(&pm, &qm, &v, &default_ray_schedule(), params, seed),
        None => ratio_estimate(&pm, &qm, trials, params, seed),
    }
    .map_err(to_py_err)?;
    json_to_py(py, &probe_value(&report))
}

#[pymodule]
fn polydom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScalarPoly>()?;
    m.add_class::<PyMatrixPoly>()?;
    m.add_function(wrap_pyfunction!(dominates, m)?)?;
    m.add_function(wrap_pyfunction!(compactly_dominates, m)?)?;
    m.add_function(wrap_pyfunction!(lsc_check, m)?)?;
    m.add_function(wrap_pyfunction!(probe, m)?)?;
    Ok(())
}
