//! Python bindings for the croute library.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use croute::eval::{self, report};
use croute::topology::{self, GenConfig, Model};
use croute::{NodeId, SchemeKind, SchemeParams};

fn err(e: croute::Error) -> PyErr {
    match e {
        croute::Error::InvalidConfig(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    report::to_json(v).map_err(err)
}

/// Immutable undirected graph with dense node ids `0..n`.
#[pyclass(frozen, module = "croute_py")]
struct Graph {
    inner: croute::Graph,
}

#[pymethods]
impl Graph {
    /// Builds a graph from `(u, v)` pairs of arbitrary non-negative ids.
    #[staticmethod]
    fn from_edges(edges: Vec<(u64, u64)>) -> PyResult<Self> {
        Ok(Graph { inner: croute::Graph::from_edges(&edges).map_err(err)? })
    }

    /// Reads an AS-relationship snapshot and keeps its giant component.
    #[staticmethod]
    fn from_asrel(text: &str) -> PyResult<Self> {
        let records = topology::parse_asrel(text).map_err(err)?;
        Ok(Graph { inner: topology::asrel_to_graph(&records).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.edge_count()
    }

    fn degree(&self, v: NodeId) -> PyResult<usize> {
        self.check(v)?;
        Ok(self.inner.degree(v))
    }

    fn neighbors(&self, v: NodeId) -> PyResult<Vec<NodeId>> {
        self.check(v)?;
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn edges(&self) -> Vec<(NodeId, NodeId)> {
        self.inner.edges().collect()
    }

    fn original_id(&self, v: NodeId) -> PyResult<u64> {
        self.check(v)?;
        Ok(self.inner.original_id(v))
    }

    /// BFS hop distances from `src`; unreachable nodes are `None`.
    fn distances(&self, src: NodeId) -> PyResult<Vec<Option<u32>>> {
        self.check(src)?;
        let t = croute::bfs(&self.inner, src);
        Ok(self.inner.nodes().map(|v| t.dist(v)).collect())
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn edges_sha256(&self) -> String {
        self.inner.fingerprint().edges_sha256
    }

    /// Topology statistics as a JSON string.
    #[pyo3(signature = (pair_budget=100_000, seed=0))]
    fn stats_json(&self, pair_budget: u64, seed: u64) -> PyResult<String> {
        json(&croute::graph::stats(&self.inner, pair_budget, seed).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.node_count(), self.inner.edge_count())
    }
}

impl Graph {
    fn check(&self, v: NodeId) -> PyResult<()> {
        if (v as usize) < self.inner.node_count() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("node {v} out of range")))
        }
    }
}

/// Generates a synthetic scale-free graph (`preferential` or `powerlaw-config`).
#[pyfunction]
#[pyo3(signature = (model, n, seed=0, m_attach=2, gamma=2.1))]
fn generate(model: &str, n: usize, seed: u64, m_attach: usize, gamma: f64) -> PyResult<Graph> {
    let model: Model = model.parse().map_err(|e: croute::Error| err(e))?;
    let cfg = GenConfig { model, n, m_attach, gamma, seed };
    Ok(Graph { inner: topology::generate(&cfg).map_err(err)? })
}

/// Routing tables and labels of one scheme on one graph.
#[pyclass(frozen, module = "croute_py")]
struct Scheme {
    inner: croute::SchemeArtifacts,
}

#[pymethods]
impl Scheme {
    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind.name()
    }

    fn table_len(&self, v: NodeId) -> PyResult<usize> {
        if (v as usize) >= self.inner.node_count() {
            return Err(PyValueError::new_err(format!("node {v} out of range")));
        }
        Ok(self.inner.table_len(v))
    }

    /// Landmark ids, or `None` for schemes without landmarks.
    fn landmarks(&self) -> Option<Vec<NodeId>> {
        self.inner.landmarks().map(|l| l.members().to_vec())
    }

    /// Node sequence followed by a packet from `src` to `dst`.
    fn route(&self, g: &Graph, src: NodeId, dst: NodeId) -> PyResult<Vec<NodeId>> {
        g.check(src)?;
        g.check(dst)?;
        croute::schemes::route(&self.inner, &g.inner, src, dst).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Scheme(kind={}, n={})", self.inner.kind.name(), self.inner.node_count())
    }
}

/// Builds a scheme of the given kind (`trivial`, `cowen`, `tz`, `hierarchical`).
#[pyfunction]
#[pyo3(signature = (g, kind, seed=0, s=None, cap=4.0, alpha=1.0/3.0, k=None))]
fn build_scheme(
    g: &Graph,
    kind: &str,
    seed: u64,
    s: Option<usize>,
    cap: f64,
    alpha: f64,
    k: Option<usize>,
) -> PyResult<Scheme> {
    let kind: SchemeKind = kind.parse().map_err(|e: croute::Error| err(e))?;
    let params = SchemeParams { s, cap, alpha, k };
    Ok(Scheme { inner: croute::schemes::build_scheme(&g.inner, kind, &params, seed).map_err(err)? })
}

/// Stretch report as a JSON string.
#[pyfunction]
#[pyo3(signature = (scheme, g, pair_budget=100_000, seed=0))]
fn measure_stretch(scheme: &Scheme, g: &Graph, pair_budget: u64, seed: u64) -> PyResult<String> {
    json(&eval::measure_stretch(&scheme.inner, &g.inner, pair_budget, seed).map_err(err)?)
}

/// Table-size statistics as a JSON string.
#[pyfunction]
fn table_stats(scheme: &Scheme) -> PyResult<String> {
    json(&eval::table_stats(&scheme.inner))
}

/// Neighbor-reinsertion report as a JSON string.
#[pyfunction]
fn neighbor_reinsertion(scheme: &Scheme, g: &Graph) -> PyResult<String> {
    json(&eval::neighbor_reinsertion(&scheme.inner, &g.inner).map_err(err)?)
}

/// Least-squares slope of `log y` against `log x`.
#[pyfunction]
fn fit_loglog_slope(points: Vec<(f64, f64)>) -> PyResult<f64> {
    croute::graph::fit_loglog_slope(&points).map_err(err)
}

#[pymodule]
fn croute_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<Scheme>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(build_scheme, m)?)?;
    m.add_function(wrap_pyfunction!(measure_stretch, m)?)?;
    m.add_function(wrap_pyfunction!(table_stats, m)?)?;
    m.add_function(wrap_pyfunction!(neighbor_reinsertion, m)?)?;
    m.add_function(wrap_pyfunction!(fit_loglog_slope, m)?)?;
    Ok(())
}
