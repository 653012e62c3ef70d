//! Python bindings for the gjrs local L-factor calculator.
//!
//! Exposes the parameter and L-factor types plus the main operations:
//!
//! ```python
//! import gjrs_py
//! rep = gjrs_py.parse("st(unram(-1/2),2)")
//! rep.lfactor().pole_order("1/2")     # 1
//! cert = rep.theta_certificate()      # {"certified": True, ...}
//! gjrs_py.run_sweep_json("pat1", "nonarch")
//! ```

use std::str::FromStr;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use gjrs::lfactor::{gj_lfactor, LFactor};
use gjrs::numeric::{self, CFloat, QuadratureSpec};
use gjrs::params::{Field, RepProduct};
use gjrs::predicates;
use gjrs::rational::QQ;
use gjrs::sweeps::{run_sweep, Fault, GridSpec, SweepKind};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_qq(s: &str) -> PyResult<QQ> {
    QQ::from_str(s).map_err(value_err)
}

/// A formal L-factor: a product of gamma and Euler atoms.
#[pyclass(name = "LFactor")]
#[derive(Clone)]
struct PyLFactor {
    inner: LFactor,
}

#[pymethods]
impl PyLFactor {
    /// Order of the pole at a rational point, e.g. "1/2".
    fn pole_order(&self, s0: &str) -> PyResult<u64> {
        Ok(self.inner.pole_order_at(&parse_qq(s0)?))
    }

    /// All real rational poles with |s| <= 10, as (point, order) pairs.
    fn poles(&self) -> Vec<(String, u64)> {
        let (lo, hi) = gjrs::report::pole_window();
        self.inner
            .poles_in_window(&lo, &hi)
            .into_iter()
            .map(|(s, order)| (s.to_string(), order))
            .collect()
    }

    /// Multiset product of two factors.
    fn multiply(&self, other: &PyLFactor) -> PyLFactor {
        PyLFactor {
            inner: self.inner.multiply(&other.inner),
        }
    }

    /// Replace s by s + t, t rational like "-1/2".
    fn shift(&self, t: &str) -> PyResult<PyLFactor> {
        Ok(PyLFactor {
            inner: self.inner.shift(&parse_qq(t)?),
        })
    }

    /// Atom list as a JSON string (schema of the CLI reports).
    fn atoms_json(&self) -> PyResult<String> {
        serde_json::to_string(&gjrs::report::atom_entries(&self.inner)).map_err(value_err)
    }

    fn __mul__(&self, other: &PyLFactor) -> PyLFactor {
        self.multiply(other)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LFactor({})", self.inner)
    }

    fn __eq__(&self, other: &PyLFactor) -> bool {
        self.inner == other.inner
    }
}

/// A product of essentially square-integrable parameters.
#[pyclass(name = "Rep")]
#[derive(Clone)]
struct PyRep {
    inner: RepProduct,
}

#[pymethods]
impl PyRep {
    /// Parse a product expression, e.g. "chiR(0,-1/2) x chiR(1,0)".
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyRep {
            inner: gjrs::parse::parse(text).map_err(value_err)?,
        })
    }

    /// Total degree of the underlying general linear group.
    fn degree(&self) -> u64 {
        self.inner.degree()
    }

    /// Base field: "real", "complex" or "nonarch".
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    /// The contragredient.
    fn dual(&self) -> PyRep {
        PyRep {
            inner: self.inner.dual(),
        }
    }

    /// Twist by |det|^t, t rational like "1/2".
    fn twist(&self, t: &str) -> PyResult<PyRep> {
        Ok(PyRep {
            inner: self.inner.twist(&parse_qq(t)?),
        })
    }

    /// Standard (Godement-Jacquet) L-factor.
    fn lfactor(&self) -> PyLFactor {
        PyLFactor {
            inner: gj_lfactor(&self.inner),
        }
    }

    /// Rankin-Selberg L-factor against another product over the same field.
    fn rs(&self, other: &PyRep) -> PyResult<PyLFactor> {
        let rs = gjrs::tensor::rs_lfactor(&self.inner, &other.inner).map_err(value_err)?;
        Ok(PyLFactor { inner: rs.lfactor })
    }

    /// Theta-lift irreducibility certificate as a dict.
    fn theta_certificate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let cert = predicates::theta_certificate(&self.inner);
        let dict = PyDict::new(py);
        dict.set_item("certified", cert.certified)?;
        dict.set_item("reason", cert.reason)?;
        dict.set_item("sigma_pole_order", cert.sigma_pole_at_half.order)?;
        dict.set_item("dual_pole_order", cert.dual_pole_at_half.order)?;
        dict.set_item("opaque_degraded", cert.sigma_pole_at_half.opaque_degraded)?;
        Ok(dict)
    }

    /// Whether the product is irreducible (pairwise criterion).
    fn is_irreducible(&self) -> PyResult<bool> {
        Ok(predicates::is_irreducible_product(&self.inner)
            .map_err(value_err)?
            .irreducible)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Rep({})", self.inner)
    }

    fn __eq__(&self, other: &PyRep) -> bool {
        self.inner == other.inner
    }
}

/// Parse a product expression.
#[pyfunction]
fn parse(text: &str) -> PyResult<PyRep> {
    PyRep::new(text)
}

/// Whether the normalized induction of two single-block expressions is
/// reducible.
#[pyfunction]
fn pair_reducible(block1: &str, block2: &str) -> PyResult<bool> {
    let b1 = gjrs::parse::parse_block(block1).map_err(value_err)?;
    let b2 = gjrs::parse::parse_block(block2).map_err(value_err)?;
    Ok(predicates::pair_reducible(&b1, &b2)
        .map_err(value_err)?
        .reducible)
}

/// Run one sweep ("pat1", "generic" or "tempered-rs") over the default
/// grid of one field ("real", "complex", "nonarch"); returns the report
/// as a JSON string. `mutate` injects a documented rule corruption.
#[pyfunction]
#[pyo3(signature = (kind, field, mutate=None))]
fn run_sweep_json(kind: &str, field: &str, mutate: Option<&str>) -> PyResult<String> {
    let kind = SweepKind::from_str(kind).map_err(value_err)?;
    let field = match field {
        "real" => Field::Real,
        "complex" => Field::Complex,
        "nonarch" => Field::NonArch,
        other => {
            return Err(value_err(format!(
                "unknown field {other:?} (expected real, complex or nonarch)"
            )))
        }
    };
    let fault = mutate.map(Fault::from_str).transpose().map_err(value_err)?;
    let report = run_sweep(kind, &GridSpec::default_for(field), fault).without_timing();
    serde_json::to_string_pretty(&report).map_err(value_err)
}

/// Max relative error of the gamma duplication identity over n
/// deterministic sample points.
#[pyfunction]
fn check_duplication(samples: usize) -> PyResult<f64> {
    numeric::check_duplication(samples).map_err(value_err)
}

/// Relative error of the rank-one zeta-integral quadrature against the
/// closed form, at real s > 0 with sign exponent m in {0, 1}.
#[pyfunction]
fn tate_relative_error(m: i64, s: f64) -> PyResult<f64> {
    numeric::tate_relative_error(m, CFloat::new(s, 0.0), &QuadratureSpec::default())
        .map_err(value_err)
}

#[pymodule]
fn gjrs_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyRep>()?;
    m.add_class::<PyLFactor>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(pair_reducible, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep_json, m)?)?;
    m.add_function(wrap_pyfunction!(check_duplication, m)?)?;
    m.add_function(wrap_pyfunction!(tate_relative_error, m)?)?;
    Ok(())
}
