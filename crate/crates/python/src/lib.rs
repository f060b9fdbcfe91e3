//! Python bindings: graphs, schemes (as JSON), PL maps and the oracles.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::IntoPyObjectExt;

use graphheight::closure::{base_family, base_height, closure_family, poset_dot, Height};
use graphheight::dynamics::{fixed_points, infinity_certificate, parse_rational, verify_certificate, InfinityCertificate, PLHomeo};
use graphheight::oracle::{cross_check, search_min_height};
use graphheight::report::published_table;
use graphheight::scheme::{apply_scheme, plan, scheme_height, Scheme};
use graphheight::{make_family, parse_graph, FamilyId, TopoGraph};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn height_to_py(py: Python<'_>, h: Height) -> PyResult<Py<PyAny>> {
    match h {
        Height::Finite(n) => n.into_py_any(py),
        Height::Infinite => f64::INFINITY.into_py_any(py),
    }
}

fn height_from_py(value: &Bound<'_, PyAny>) -> PyResult<Height> {
    if let Ok(n) = value.extract::<u64>() {
        return Ok(Height::Finite(n));
    }
    if let Ok(x) = value.extract::<f64>() {
        if x == f64::INFINITY {
            return Ok(Height::Infinite);
        }
    }
    if let Ok(s) = value.extract::<String>() {
        return s.parse().map_err(|_| PyValueError::new_err(format!("invalid height `{s}`")));
    }
    Err(PyValueError::new_err("height must be a non-negative int, math.inf or \"inf\""))
}

fn parse_scheme(text: Option<&str>) -> PyResult<Scheme> {
    match text {
        None => Ok(Scheme::FullHomeo),
        Some(t) => serde_json::from_str(t).map_err(err),
    }
}

/// A finite connected multigraph regarded as a topological graph.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: TopoGraph,
}

#[pymethods]
impl PyGraph {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: parse_graph(text).map_err(err)?,
        })
    }

    /// `interval`, `circle`, `lollipop`, `star:n`, `xn:n`, `yn:n`, `zn:n`, `wn:n`.
    #[staticmethod]
    fn family(name: &str) -> PyResult<Self> {
        let id: FamilyId = name.parse().map_err(err)?;
        Ok(PyGraph {
            inner: make_family(id).map_err(err)?,
        })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn base_height(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        height_to_py(py, base_height(&self.inner))
    }

    /// Number of orbit closures under the full group, or under `scheme`.
    #[pyo3(signature = (scheme=None))]
    fn cell_count(&self, scheme: Option<&str>) -> PyResult<usize> {
        let s = parse_scheme(scheme)?;
        if s == Scheme::FullHomeo {
            return Ok(base_family(&self.inner).len());
        }
        Ok(closure_family(&apply_scheme(&self.inner, &s).map_err(err)?).len())
    }

    #[pyo3(signature = (scheme=None))]
    fn poset_dot(&self, scheme: Option<&str>) -> PyResult<String> {
        let s = parse_scheme(scheme)?;
        Ok(poset_dot(&closure_family(&apply_scheme(&self.inner, &s).map_err(err)?)))
    }

    fn scheme_height(&self, py: Python<'_>, scheme: &str) -> PyResult<Py<PyAny>> {
        let s = parse_scheme(Some(scheme))?;
        height_to_py(py, scheme_height(&self.inner, &s).map_err(err)?)
    }

    /// A scheme (as JSON) whose height is `target`.
    fn plan(&self, target: &Bound<'_, PyAny>) -> PyResult<String> {
        let s = plan(&self.inner, height_from_py(target)?).map_err(err)?;
        serde_json::to_string(&s).map_err(err)
    }

    /// Engine, closed form and chain search for `scheme`, as JSON.
    #[pyo3(signature = (scheme=None))]
    fn cross_check(&self, scheme: Option<&str>) -> PyResult<String> {
        let x = cross_check(&self.inner, &parse_scheme(scheme)?).map_err(err)?;
        serde_json::to_string(&x).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} vertices, {} edges)",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// A piecewise-linear homeomorphism of [0,1] with rational breakpoints.
#[pyclass(name = "PLMap", frozen)]
struct PyPLMap {
    inner: PLHomeo,
}

#[pymethods]
impl PyPLMap {
    #[new]
    fn new(points: Vec<(String, String)>) -> PyResult<Self> {
        Ok(PyPLMap {
            inner: PLHomeo::from_strs(&points).map_err(err)?,
        })
    }

    fn eval(&self, x: &str) -> PyResult<String> {
        Ok(self.inner.eval(&parse_rational(x).map_err(err)?).to_string())
    }

    fn fixed_points(&self) -> Vec<String> {
        fixed_points(&self.inner).iter().map(|s| s.to_string()).collect()
    }

    /// Certificate (as JSON) of `n` points with pairwise distinct closures.
    #[pyo3(signature = (n, d=20))]
    fn infinity_certificate(&self, n: usize, d: usize) -> PyResult<String> {
        let c = infinity_certificate(&self.inner, n, d).map_err(err)?;
        serde_json::to_string(&c).map_err(err)
    }

    fn verify_certificate(&self, certificate: &str) -> PyResult<bool> {
        let c: InfinityCertificate = serde_json::from_str(certificate).map_err(err)?;
        verify_certificate(&self.inner, &c).map_err(err)
    }
}

/// Witness graph (as JSON) of smallest size with base height `p`, if any.
#[pyfunction]
#[pyo3(signature = (p, vmax=6, emax=8))]
fn search(p: u64, vmax: usize, emax: usize) -> PyResult<Option<String>> {
    let r = search_min_height(p, vmax, emax).map_err(err)?;
    Ok(r.witness.map(|g| g.to_json()))
}

/// Rows of the published-heights table, as JSON.
#[pyfunction]
fn verify_paper() -> PyResult<String> {
    serde_json::to_string(&published_table()).map_err(err)
}

#[pymodule]
#[pyo3(name = "graphheight")]
pub fn graphheight_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyPLMap>()?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(verify_paper, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
