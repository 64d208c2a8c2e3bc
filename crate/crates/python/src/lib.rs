//! Python bindings: polynomials, fields, analysis, catalog and chains.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use crsym::catalog::{build_model, check_instance, ModelSpec, RowId};
use crsym::chains::{chain_sum, pure_chain_sum_closed_form, pure_pair, PurePairParams};
use crsym::report::{analyze_with, levi_rank_at_origin, AnalyzeOptions};
use crsym::tangency::{is_symmetry, tangency_residual};
use crsym::weights::infer_multitype_weights;
use crsym::{Error, HoloField, MixedPoly};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InternalInconsistency(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_value<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// Real-analytic polynomial in z1, z2, their conjugates Z1, Z2 and w.
#[pyclass(name = "Polynomial", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPolynomial(MixedPoly);

/// Accepts either a Polynomial or its text form.
#[derive(FromPyObject)]
enum PolyArg {
    Poly(Py<PyPolynomial>),
    Text(String),
}

impl PolyArg {
    fn get(self, py: Python<'_>) -> PyResult<MixedPoly> {
        match self {
            PolyArg::Poly(p) => Ok(p.bind(py).get().0.clone()),
            PolyArg::Text(s) => crsym::parse::parse_polynomial(&s).map_err(to_py),
        }
    }
}

#[pymethods]
impl PyPolynomial {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        crsym::parse::parse_polynomial(text).map(Self).map_err(to_py)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.0)
    }

    fn __add__(&self, py: Python<'_>, other: PolyArg) -> PyResult<Self> {
        Ok(Self(&self.0 + &other.get(py)?))
    }

    fn __sub__(&self, py: Python<'_>, other: PolyArg) -> PyResult<Self> {
        Ok(Self(&self.0 - &other.get(py)?))
    }

    fn __mul__(&self, py: Python<'_>, other: PolyArg) -> PyResult<Self> {
        Ok(Self(&self.0 * &other.get(py)?))
    }

    fn conj(&self) -> Self {
        Self(self.0.conj())
    }

    fn re(&self) -> Self {
        Self(self.0.re())
    }

    fn im(&self) -> Self {
        Self(self.0.im())
    }

    fn is_real(&self) -> bool {
        self.0.check_real()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn levi_rank(&self) -> u8 {
        levi_rank_at_origin(&self.0)
    }

    /// Multitype weights as a pair of rational strings.
    fn weights(&self) -> PyResult<(String, String)> {
        let w = infer_multitype_weights(&self.0).map_err(to_py)?;
        Ok((w.mu1.to_string(), w.mu2.to_string()))
    }
}

/// Holomorphic vector field f1 d1 + f2 d2 + g dw.
#[pyclass(name = "Field", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyField(HoloField);

#[pymethods]
impl PyField {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        crsym::parse::parse_field(text).map(Self).map_err(to_py)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Field('{}')", self.0)
    }

    fn bracket(&self, other: &PyField) -> Self {
        Self(self.0.bracket(&other.0))
    }

    /// The field applied to a polynomial as a derivation.
    fn apply(&self, py: Python<'_>, p: PolyArg) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial(self.0.apply(&p.get(py)?)))
    }

    fn residual(&self, py: Python<'_>, p: PolyArg) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial(tangency_residual(&self.0, &p.get(py)?)))
    }

    fn is_symmetry(&self, py: Python<'_>, p: PolyArg) -> PyResult<bool> {
        Ok(is_symmetry(&self.0, &p.get(py)?))
    }
}

/// Result of analyzing a model.
#[pyclass(name = "Analysis", frozen)]
struct PyAnalysis(crsym::report::Analysis);

#[pymethods]
impl PyAnalysis {
    #[getter]
    fn dim(&self) -> usize {
        self.0.row.dim_g
    }

    #[getter]
    fn weights(&self) -> (String, String) {
        let w = &self.0.algebra.weights;
        (w.mu1.to_string(), w.mu2.to_string())
    }

    #[getter]
    fn table_row(&self) -> Option<String> {
        self.0.table_row.map(|t| t.to_string())
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.0.notes.clone()
    }

    #[getter]
    fn holo_nondegenerate(&self) -> bool {
        self.0.algebra.holo_nondegenerate()
    }

    /// Dimension profile as a dict.
    fn row<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_value(py, &serde_json::to_string(&self.0.row).expect("serializable"))
    }

    /// Weights of the nonzero components, as rational strings.
    fn component_weights(&self) -> Vec<String> {
        self.0.algebra.components.iter().map(|c| c.weight.to_string()).collect()
    }

    /// Real basis of the component of the given weight.
    fn basis(&self, weight: &str) -> PyResult<Vec<PyField>> {
        let nu = crsym::algebra::parse_rat(weight).ok_or_else(|| PyValueError::new_err(format!("bad rational {weight}")))?;
        Ok(self.0.algebra.component(&nu).map(|c| c.basis.iter().cloned().map(PyField).collect()).unwrap_or_default())
    }

    fn exotic(&self) -> Option<PyField> {
        self.0.exotic.as_ref().map(|e| PyField(e.field.clone()))
    }

    fn report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_value(py, &self.report_json())
    }

    fn report_json(&self) -> String {
        serde_json::to_string_pretty(&self.0.report()).expect("serializable")
    }

    fn text(&self) -> String {
        self.0.render_text()
    }
}

#[pyfunction]
#[pyo3(signature = (poly, strip_pluriharmonic = false, max_denominator = None))]
fn analyze(py: Python<'_>, poly: PolyArg, strip_pluriharmonic: bool, max_denominator: Option<i64>) -> PyResult<PyAnalysis> {
    let p = poly.get(py)?;
    let opts = AnalyzeOptions { strip_pluriharmonic, max_denominator };
    py.detach(|| analyze_with(&p, &opts)).map(PyAnalysis).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (row, params = ""))]
fn catalog_model(row: &str, params: &str) -> PyResult<PyPolynomial> {
    let row: RowId = row.parse().map_err(to_py)?;
    let spec = ModelSpec::parse(row, params).map_err(to_py)?;
    build_model(&spec).map(PyPolynomial).map_err(to_py)
}

/// Profile comparison for one catalog instance, as a dict.
#[pyfunction]
#[pyo3(signature = (row, params = ""))]
fn catalog_verify<'py>(py: Python<'py>, row: &str, params: &str) -> PyResult<Bound<'py, PyAny>> {
    let row: RowId = row.parse().map_err(to_py)?;
    let spec = ModelSpec::parse(row, params).map_err(to_py)?;
    let (line, _) = py.detach(|| check_instance(&spec));
    json_value(py, &serde_json::to_string(&line).expect("serializable"))
}

/// Pure X-pair: returns (U, V, chain sum, exotic field) and checks the
/// closed form of the sum.
#[pyfunction]
#[pyo3(signature = (p, q, alpha, beta, k, n, m, tau = "1"))]
#[allow(clippy::too_many_arguments)]
fn pure_chains(
    p: u32,
    q: u32,
    alpha: i64,
    beta: i64,
    k: u32,
    n: u32,
    m: u32,
    tau: &str,
) -> PyResult<(Vec<PyPolynomial>, Vec<PyPolynomial>, PyPolynomial, PyField)> {
    let tau_poly = crsym::parse::parse_polynomial(tau).map_err(to_py)?;
    if tau_poly.terms().any(|(mono, _)| !mono.is_one()) {
        return Err(PyValueError::new_err("tau must be a number"));
    }
    let mut params = PurePairParams::new(p, q, alpha, beta, k, n, m);
    params.tau = tau_poly.coeff(&crsym::Mono::ONE);
    let pair = pure_pair(&params).map_err(to_py)?;
    let sum = chain_sum(&pair);
    if sum != pure_chain_sum_closed_form(&params).map_err(to_py)? {
        return Err(PyRuntimeError::new_err("chain sum differs from its closed form"));
    }
    let wrap = |v: &[MixedPoly]| v.iter().cloned().map(PyPolynomial).collect();
    Ok((wrap(&pair.u), wrap(&pair.v), PyPolynomial(sum), PyField(params.field())))
}

#[pymodule]
#[pyo3(name = "crsym")]
fn crsym_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyField>()?;
    m.add_class::<PyAnalysis>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_model, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_verify, m)?)?;
    m.add_function(wrap_pyfunction!(pure_chains, m)?)?;
    m.add("SCHEMA_VERSION", crsym::report::SCHEMA_VERSION)?;
    Ok(())
}
