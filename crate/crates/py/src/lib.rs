//! Python bindings: polynomials and endomorphisms of free algebras, the
//! decision procedures, and JSON reports with their verifier.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use nctame::alphabet::Alphabet;
use nctame::autom::{jz, NcEndo};
use nctame::metab::jm;
use nctame::parse::{parse_mode, parse_nc, Mode};
use nctame::report::{run, verify_json, Command, Report};
use nctame::{Ctx, Error, NcPoly};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::ResourceLimit(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn alphabet(vars: Option<Vec<String>>) -> PyResult<Ctx> {
    let names = vars.unwrap_or_else(|| ["x", "y", "z"].map(String::from).to_vec());
    Alphabet::new(&names).map_err(py_err)
}

/// A polynomial in noncommuting variables with rational coefficients.
#[pyclass(name = "Poly", frozen)]
struct PyPoly(NcPoly);

#[pymethods]
impl PyPoly {
    #[new]
    #[pyo3(signature = (text, vars = None))]
    fn new(text: &str, vars: Option<Vec<String>>) -> PyResult<Self> {
        Ok(PyPoly(parse_nc(text, &alphabet(vars)?).map_err(py_err)?))
    }

    fn vars(&self) -> Vec<String> {
        self.0.ctx().names().to_vec()
    }

    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __add__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly(self.0.checked_add(&other.0).map_err(py_err)?))
    }

    fn __sub__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly(self.0.checked_sub(&other.0).map_err(py_err)?))
    }

    fn __mul__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly(self.0.checked_mul(&other.0).map_err(py_err)?))
    }

    fn __pow__(&self, k: u32, _modulo: Option<u32>) -> PyPoly {
        PyPoly(self.0.pow(k))
    }

    fn __eq__(&self, other: &PyPoly) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.0)
    }
}

/// An endomorphism given by the images of the variables, written `f ; g ; h`.
#[pyclass(name = "Endo", frozen)]
struct PyEndo(NcEndo);

#[pymethods]
impl PyEndo {
    #[new]
    #[pyo3(signature = (text, vars = None))]
    fn new(text: &str, vars: Option<Vec<String>>) -> PyResult<Self> {
        Ok(PyEndo(NcEndo::parse(text, &alphabet(vars)?).map_err(py_err)?))
    }

    fn images(&self) -> Vec<PyPoly> {
        self.0.images().iter().cloned().map(PyPoly).collect()
    }

    /// `self ∘ other`.
    fn compose(&self, other: &PyEndo) -> PyResult<PyEndo> {
        Ok(PyEndo(self.0.compose(&other.0).map_err(py_err)?))
    }

    fn apply(&self, p: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly(self.0.apply(&p.0).map_err(py_err)?))
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    /// The 2x2 matrix over `K[z1, z2]` of a `z`-fixing map linear in `x`, `y`.
    fn jz(&self) -> PyResult<String> {
        Ok(jz(&self.0).map_err(py_err)?.to_string())
    }

    /// The metabelian Jacobian over `K[x1, …, x2, …]`.
    fn jm(&self) -> PyResult<String> {
        Ok(jm(&self.0).map_err(py_err)?.to_string())
    }

    fn __eq__(&self, other: &PyEndo) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Endo('{}')", self.0)
    }
}

fn report_json(cmd: &Command) -> PyResult<String> {
    Ok(run(cmd).map_err(py_err)?.to_json())
}

/// Canonical printed form of `text` read as an associative, commutative or
/// nonassociative polynomial.
#[pyfunction]
#[pyo3(signature = (text, mode = "associative", vars = None))]
fn canonical(text: &str, mode: &str, vars: Option<Vec<String>>) -> PyResult<String> {
    let mode = match mode {
        "associative" => Mode::Associative,
        "commutative" => Mode::Commutative,
        "nonassociative" => Mode::Nonassociative,
        m => return Err(PyValueError::new_err(format!("unknown mode `{m}`"))),
    };
    parse_mode(text, &alphabet(vars)?, mode).map_err(py_err)
}

/// Report for a coordinate of `K⟨x, y, z⟩`, as JSON.
#[pyfunction]
fn coord_decide(poly: &str) -> PyResult<String> {
    report_json(&Command::coord_decide(poly))
}

/// Report for the `z`-fixing map `(f, g, z)`, as JSON.
#[pyfunction]
fn auto_decide_zfix(f: &str, g: &str) -> PyResult<String> {
    report_json(&Command::AutoDecideZfix { f: f.into(), g: g.into() })
}

/// GE2 membership report for a matrix `[[a, c], [b, d]]` over `K[z1, z2]`.
#[pyfunction]
fn ge2_check(matrix: &str) -> PyResult<String> {
    report_json(&Command::ge2_check(matrix))
}

/// Runs a JSON command such as `{"verb": "obstruction-tau"}`.
#[pyfunction]
fn run_command(command: &str) -> PyResult<String> {
    let cmd: Command = serde_json::from_str(command).map_err(|e| PyValueError::new_err(e.to_string()))?;
    report_json(&cmd)
}

/// Rechecks a JSON report; malformed reports are rejected.
#[pyfunction]
fn verify(report: &str) -> bool {
    verify_json(report)
}

/// The verdict field of a JSON report.
#[pyfunction]
fn verdict(report: &str) -> PyResult<String> {
    Ok(Report::from_json(report).map_err(py_err)?.verdict)
}

#[pymodule]
#[pyo3(name = "nctame")]
fn nctame_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyEndo>()?;
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    m.add_function(wrap_pyfunction!(coord_decide, m)?)?;
    m.add_function(wrap_pyfunction!(auto_decide_zfix, m)?)?;
    m.add_function(wrap_pyfunction!(ge2_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_command, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(verdict, m)?)?;
    Ok(())
}
