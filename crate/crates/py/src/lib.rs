//! Python bindings. Instances and covers cross the boundary as the same JSON
//! documents the command-line tool reads and writes.

use bicover::cli::{generate as gen_any, FamilyArg};
use bicover::cover::{self, BicliqueCover, CoverConfig};
use bicover::extremal;
use bicover::hypergraph::{self, HyperConfig};
use bicover::io::{self, AnyInstance};
use bicover::oracle::{self, SmallGraph};
use bicover::{Error, IncidenceInstance};
use clap::ValueEnum;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(pybicover, RefusedError, PyException, "An exact routine refused an input above its caps.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Refused(m) => RefusedError::new_err(m),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A bipartite incidence instance.
#[pyclass(name = "Instance", module = "pybicover", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyInstance {
    inner: IncidenceInstance,
}

#[pymethods]
impl PyInstance {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyInstance { inner: io::instance_from_json(text).map_err(to_py)? })
    }

    /// Explicit instance on `m x n` vertices.
    #[staticmethod]
    fn explicit(m: usize, n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyInstance { inner: IncidenceInstance::explicit(m, n, edges).map_err(to_py)? })
    }

    fn to_json(&self) -> String {
        io::instance_to_json(&self.inner)
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    fn is_explicit(&self) -> bool {
        self.inner.is_explicit()
    }

    /// Sorted `(p, q)` incidences.
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edge_set()
    }

    fn __repr__(&self) -> String {
        format!("Instance(m={}, n={}, explicit={})", self.inner.m, self.inner.n, self.inner.is_explicit())
    }
}

/// A cover by complete bipartite blocks.
#[pyclass(name = "Cover", module = "pybicover", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCover {
    inner: BicliqueCover,
}

#[pymethods]
impl PyCover {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyCover { inner: BicliqueCover::from_json(text).map_err(to_py)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn cost_j(&self) -> u64 {
        self.inner.cost_j
    }

    /// `(A, B)` pairs.
    fn blocks(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        self.inner.blocks.iter().map(|b| (b.a.clone(), b.b.clone())).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.blocks.len()
    }

    fn __repr__(&self) -> String {
        format!("Cover(blocks={}, cost_j={})", self.inner.blocks.len(), self.inner.cost_j)
    }
}

/// A k-partite instance.
#[pyclass(name = "HyperInstance", module = "pybicover", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyHyperInstance {
    inner: hypergraph::KPartiteInstance,
}

#[pymethods]
impl PyHyperInstance {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyHyperInstance { inner: io::hyper_instance_from_json(text).map_err(to_py)? })
    }

    fn to_json(&self) -> String {
        io::hyper_instance_to_json(&self.inner)
    }

    #[getter]
    fn sizes(&self) -> Vec<usize> {
        self.inner.sizes.clone()
    }

    fn edges(&self) -> PyResult<Vec<Vec<usize>>> {
        hypergraph::hyper_edge_set(&self.inner).map_err(to_py)
    }
}

/// A cover of a k-partite instance by complete k-partite blocks.
#[pyclass(name = "HyperCover", module = "pybicover", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyHyperCover {
    inner: hypergraph::HyperCover,
}

#[pymethods]
impl PyHyperCover {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyHyperCover { inner: hypergraph::HyperCover::from_json(text).map_err(to_py)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn cost(&self) -> u64 {
        self.inner.cost
    }

    fn blocks(&self) -> Vec<Vec<Vec<usize>>> {
        self.inner.blocks.iter().map(|b| b.parts.clone()).collect()
    }
}

/// Builds a cover; `config` is a JSON object such as `{"r": 4, "sideRule": "auto"}`.
#[pyfunction]
#[pyo3(signature = (instance, config=None, merge=false))]
fn build_cover(instance: &PyInstance, config: Option<&str>, merge: bool) -> PyResult<PyCover> {
    let cfg: CoverConfig = match config {
        Some(c) => serde_json::from_str(c).map_err(json_err)?,
        None => CoverConfig::default(),
    };
    let mut c = cover::build_cover(&instance.inner, &cfg).map_err(to_py)?;
    if merge {
        c = cover::merge_pass(&c);
    }
    Ok(PyCover { inner: c })
}

#[pyfunction]
fn merge_pass(cover: &PyCover) -> PyCover {
    PyCover { inner: cover::merge_pass(&cover.inner) }
}

/// Verification report as a JSON string.
#[pyfunction]
fn verify_cover(instance: &PyInstance, cover: &PyCover) -> PyResult<String> {
    serde_json::to_string(&cover::verify_cover(&instance.inner, &cover.inner)).map_err(json_err)
}

/// Exact minimum cost and a witness cover.
#[pyfunction]
#[pyo3(signature = (instance, edge_cap=oracle::DEFAULT_EDGE_CAP))]
fn min_cover_cost(instance: &PyInstance, edge_cap: usize) -> PyResult<(u64, PyCover)> {
    let g = SmallGraph::from_instance(&instance.inner).map_err(to_py)?;
    let (cost, c) = oracle::min_cover_cost(&g, edge_cap).map_err(to_py)?;
    Ok((cost, PyCover { inner: c }))
}

#[pyfunction]
#[pyo3(signature = (instance, config=None, merge=false))]
fn build_hyper_cover(instance: &PyHyperInstance, config: Option<&str>, merge: bool) -> PyResult<PyHyperCover> {
    let cfg: HyperConfig = match config {
        Some(c) => serde_json::from_str(c).map_err(json_err)?,
        None => HyperConfig::default(),
    };
    let mut c = hypergraph::build_hyper_cover(&instance.inner, &cfg).map_err(to_py)?;
    if merge {
        c = hypergraph::merge_hyper_pass(&c);
    }
    Ok(PyHyperCover { inner: c })
}

#[pyfunction]
fn verify_hyper_cover(instance: &PyHyperInstance, cover: &PyHyperCover) -> PyResult<String> {
    let rep = hypergraph::verify_hyper_cover(&instance.inner, &cover.inner).map_err(to_py)?;
    serde_json::to_string(&rep).map_err(json_err)
}

/// Generator output as an `Instance` or `HyperInstance`. Families: st-grid,
/// clone-st, halfplanes, lines, disks, curve, hyper-orient, hyper-collinear.
#[pyfunction]
#[pyo3(signature = (family, size, seed=0, clone=2, planted=5))]
fn generate(py: Python<'_>, family: &str, size: usize, seed: u64, clone: usize, planted: usize) -> PyResult<Py<PyAny>> {
    let fam = FamilyArg::from_str(family, false).map_err(PyValueError::new_err)?;
    Ok(match gen_any(fam, size, seed, clone, planted).map_err(to_py)? {
        AnyInstance::Graph(g) => Py::new(py, PyInstance { inner: g })?.into_any(),
        AnyInstance::Hyper(h) => Py::new(py, PyHyperInstance { inner: h })?.into_any(),
    })
}

#[pyfunction]
fn e_func(d: Vec<u32>, n: Vec<f64>) -> PyResult<f64> {
    extremal::e_func(&d, &n).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (d, n, eps=0.0))]
fn f_func(d: Vec<u32>, n: Vec<f64>, eps: f64) -> PyResult<f64> {
    extremal::f_func(&d, &n, eps).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (d, n, eps=0.0))]
fn fstar_func(d: Vec<u32>, n: Vec<f64>, eps: f64) -> PyResult<f64> {
    extremal::fstar_func(&d, &n, eps).map_err(to_py)
}

#[pyfunction]
fn graph_exponents(d1: u32, d2: u32) -> PyResult<(f64, f64)> {
    extremal::graph_exponents(d1, d2).map_err(to_py)
}

#[pymodule]
fn pybicover(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("RefusedError", m.py().get_type::<RefusedError>())?;
    m.add_class::<PyInstance>()?;
    m.add_class::<PyCover>()?;
    m.add_class::<PyHyperInstance>()?;
    m.add_class::<PyHyperCover>()?;
    m.add_function(wrap_pyfunction!(build_cover, m)?)?;
    m.add_function(wrap_pyfunction!(merge_pass, m)?)?;
    m.add_function(wrap_pyfunction!(verify_cover, m)?)?;
    m.add_function(wrap_pyfunction!(min_cover_cost, m)?)?;
    m.add_function(wrap_pyfunction!(build_hyper_cover, m)?)?;
    m.add_function(wrap_pyfunction!(verify_hyper_cover, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(e_func, m)?)?;
    m.add_function(wrap_pyfunction!(f_func, m)?)?;
    m.add_function(wrap_pyfunction!(fstar_func, m)?)?;
    m.add_function(wrap_pyfunction!(graph_exponents, m)?)?;
    Ok(())
}
