//! Python bindings. Rationals cross the boundary as strings such as `"3/7"`,
//! complexes as sorted lists of facets, and verdicts as plain dicts.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;
use tddel_core::tdsystem::verify_verdict;
use tddel_core::{
    build_system, decide, format_rational, parse_rational, realize, witness, Error, Face, FeasibilityVerdict,
    SimplicialComplex, VertexId,
};

fn err(e: Error) -> PyErr {
    match e {
        Error::TheoremViolation(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn from_py<T: serde::de::DeserializeOwned>(py: Python<'_>, obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = py.import("json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn facets(c: &SimplicialComplex) -> Vec<Vec<String>> {
    c.facets().iter().map(Face::labels).collect()
}

fn face(labels: Vec<String>) -> PyResult<Face> {
    Face::new(labels.iter().map(String::as_str)).map_err(err)
}

fn vertex(label: &str) -> PyResult<VertexId> {
    VertexId::new(label).map_err(err)
}

/// `d` linear orders on a common finite set, each listed from least to
/// greatest.
#[pyclass(module = "tddel", frozen, eq)]
#[derive(PartialEq)]
struct Representation(tddel_core::Representation);

#[pymethods]
impl Representation {
    #[new]
    fn new(orders: Vec<Vec<String>>) -> PyResult<Self> {
        let orders = orders
            .into_iter()
            .map(|o| o.into_iter().map(VertexId::new).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        tddel_core::Representation::new(orders).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(Self).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    #[getter]
    fn d(&self) -> usize {
        self.0.d()
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.0.elements().iter().map(|v| v.to_string()).collect()
    }

    #[getter]
    fn orders(&self) -> Vec<Vec<String>> {
        self.0.orders().iter().map(|o| o.iter().map(|v| v.to_string()).collect()).collect()
    }

    fn sigma(&self) -> Vec<Vec<String>> {
        facets(&self.0.sigma())
    }

    fn is_face(&self, f: Vec<String>) -> PyResult<bool> {
        self.0.is_face(&face(f)?).map_err(err)
    }

    fn is_vertex(&self, v: &str) -> PyResult<bool> {
        self.0.is_vertex(&vertex(v)?).map_err(err)
    }

    fn dominates(&self, x: &str, f: Vec<String>) -> PyResult<bool> {
        self.0.dominates(&vertex(x)?, &face(f)?).map_err(err)
    }

    /// Swaps consecutive `x`, `y` in order `i` (0-based).
    fn swap_consecutive(&self, i: usize, x: &str, y: &str) -> PyResult<Self> {
        self.0.swap_consecutive(i, &vertex(x)?, &vertex(y)?).map(Self).map_err(err)
    }

    fn standardness(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.0.standardness().map_err(err)?)
    }

    /// The system matrix as `{d, rows, cols, entries}`.
    fn system(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &build_system(&self.0))
    }

    /// `{"verdict": "feasible", "solution": ...}` or
    /// `{"verdict": "certificate", "multiflow": [...]}`.
    fn decide(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &decide(&self.0).map_err(err)?)
    }

    /// Re-checks a verdict produced by `decide`.
    fn verify(&self, py: Python<'_>, verdict: &Bound<'_, PyAny>) -> PyResult<bool> {
        let v: FeasibilityVerdict = from_py(py, verdict)?;
        Ok(verify_verdict(&self.0, &v))
    }

    /// Points whose TD-Delaunay complex is `sigma()`, or `None`.
    fn realize(&self) -> PyResult<Option<PointConfiguration>> {
        realize(&self.0).map(|p| p.map(PointConfiguration)).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Representation({:?})", self.orders())
    }
}

/// Labelled points of the hyperplane where coordinates sum to 1.
#[pyclass(module = "tddel", frozen, eq)]
#[derive(PartialEq)]
struct PointConfiguration(tddel_core::PointConfiguration);

#[pymethods]
impl PointConfiguration {
    #[new]
    fn new(d: usize, points: BTreeMap<String, Vec<String>>) -> PyResult<Self> {
        let mut map = BTreeMap::new();
        for (label, xs) in points {
            let x = xs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>().map_err(err)?;
            map.insert(vertex(&label)?, x);
        }
        tddel_core::PointConfiguration::new(d, map).map(Self).map_err(err)
    }

    #[getter]
    fn d(&self) -> usize {
        self.0.d()
    }

    #[getter]
    fn points(&self) -> BTreeMap<String, Vec<String>> {
        self.0.points().iter().map(|(v, x)| (v.to_string(), x.iter().map(format_rational).collect())).collect()
    }

    fn in_general_position(&self) -> bool {
        self.0.in_general_position()
    }

    fn tdd(&self) -> PyResult<Vec<Vec<String>>> {
        self.0.tdd().map(|c| facets(&c)).map_err(err)
    }

    /// The coordinate orders.
    fn representation(&self) -> PyResult<Representation> {
        self.0.representation_of().map(Representation).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("PointConfiguration(d={}, {} points)", self.0.d(), self.0.len())
    }
}

/// Planar points with pairwise distinct x- and y-coordinates.
#[pyclass(module = "tddel", frozen)]
struct PlanarPointSet(tddel_core::PlanarPointSet);

#[pymethods]
impl PlanarPointSet {
    #[new]
    fn new(points: BTreeMap<String, (String, String)>) -> PyResult<Self> {
        let mut map = BTreeMap::new();
        for (label, (x, y)) in points {
            map.insert(vertex(&label)?, (parse_rational(&x).map_err(err)?, parse_rational(&y).map_err(err)?));
        }
        tddel_core::PlanarPointSet::new(map).map(Self).map_err(err)
    }

    /// Facets of the rectangular Delaunay complex.
    fn rdelaunay(&self) -> Vec<Vec<String>> {
        facets(&self.0.rdelaunay())
    }

    /// x ascending, x descending, y ascending, y descending.
    fn representation(&self) -> PyResult<Representation> {
        self.0.four_order_representation().map(Representation).map_err(err)
    }

    /// Points in dimension 4 with the same complex.
    fn realize(&self) -> PyResult<PointConfiguration> {
        self.0.realize().map(PointConfiguration).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

/// The 4-order representation on `a..h` whose system is infeasible.
#[pyfunction]
fn counterexample() -> Representation {
    Representation(witness::counterexample_representation())
}

/// Checks every candidate representation of the counterexample's complex.
/// Set `TDDEL_THREADS` to bound the worker count.
#[pyfunction]
#[pyo3(signature = (full = false))]
fn verify_counterexample(py: Python<'_>, full: bool) -> PyResult<Py<PyAny>> {
    let report = py.detach(witness::verify_counterexample).map_err(err)?;
    to_py(py, &report.to_json(full))
}

#[pymodule]
pub fn tddel(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Representation>()?;
    m.add_class::<PointConfiguration>()?;
    m.add_class::<PlanarPointSet>()?;
    m.add_function(wrap_pyfunction!(counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(verify_counterexample, m)?)?;
    Ok(())
}
