//! Python bindings: the main types (graphs, hypergraphs) and operations
//! (generators, Berge-cycle detection, builds, solvers, certificates) in
//! one flat module. Reports cross the boundary as JSON strings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use berge_ramsey::berge;
use berge_ramsey::census;
use berge_ramsey::certify;
use berge_ramsey::girth as girthlab;
use berge_ramsey::graph;
use berge_ramsey::hypergraph;
use berge_ramsey::indep;
use berge_ramsey::peel;
use berge_ramsey::randbuild;
use berge_ramsey::textio;

/// Witness crossing the boundary: (edges as vertex lists, SDR).
type PyWitness = (Vec<Vec<usize>>, Vec<usize>);
/// Degree-pipeline result: (subgraph, (left, right), id map, report JSON).
type PyDegPipeline = (PyGraph, (Vec<usize>, Vec<usize>), Vec<usize>, String);

fn err(e: berge_ramsey::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn mode(nontrivial: bool) -> berge::Mode {
    if nontrivial {
        berge::Mode::NontrivialOnly
    } else {
        berge::Mode::TrivialAllowed
    }
}

#[pyclass(name = "Graph")]
struct PyGraph {
    inner: graph::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Self {
            inner: graph::Graph::new(n, edges).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn degree(&self, v: usize) -> usize {
        self.inner.degree(v)
    }

    fn neighbors(&self, v: usize) -> Vec<usize> {
        self.inner.neighbors(v).to_vec()
    }

    /// Exact girth; None for acyclic graphs.
    fn girth(&self) -> Option<usize> {
        girthlab::girth(&self.inner).girth
    }

    fn subdivide(&self, t: usize) -> PyGraph {
        PyGraph {
            inner: self.inner.subdivide(t),
        }
    }

    fn to_text(&self) -> String {
        textio::serialize_graph(&self.inner)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<PyGraph> {
        Ok(PyGraph {
            inner: textio::parse_graph(text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn random_gnm(n: usize, m: usize, seed: u64) -> PyGraph {
        PyGraph {
            inner: graph::Graph::random_gnm(n, m, seed),
        }
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.n(), self.inner.edge_count())
    }
}

#[pyclass(name = "Hypergraph")]
struct PyHypergraph {
    inner: hypergraph::Hypergraph,
}

#[pymethods]
impl PyHypergraph {
    #[new]
    fn new(r: usize, n: usize, edges: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(Self {
            inner: hypergraph::Hypergraph::new(r, n, edges).map_err(err)?,
        })
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<Vec<usize>> {
        self.inner.edges().to_vec()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.inner.degree(v).map_err(err)
    }

    fn codegree(&self, u: usize, v: usize) -> PyResult<usize> {
        self.inner.codegree(u, v).map_err(err)
    }

    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn average_degree(&self) -> f64 {
        self.inner.average_degree()
    }

    /// Induced sub-hypergraph plus the new-to-original id map.
    fn induced(&self, verts: Vec<usize>) -> (PyHypergraph, Vec<usize>) {
        let (h, map) = self.inner.induced(&verts);
        (PyHypergraph { inner: h }, map)
    }

    fn is_independent(&self, set: Vec<usize>) -> bool {
        self.inner.is_independent(&set)
    }

    fn to_text(&self) -> String {
        textio::serialize_hypergraph(&self.inner)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<PyHypergraph> {
        Ok(PyHypergraph {
            inner: textio::parse_hypergraph(text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn random(r: usize, n: usize, m: usize, seed: u64) -> PyHypergraph {
        PyHypergraph {
            inner: hypergraph::Hypergraph::random(r, n, m, seed),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Hypergraph(r={}, n={}, edges={})",
            self.inner.r(),
            self.inner.n(),
            self.inner.edge_count()
        )
    }
}

/// Point-line incidence graph of PG(2, q): girth 6, (q+1)-regular.
#[pyfunction]
fn gen_pp(q: u64) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: girthlab::incidence_pp(q).map_err(err)?,
    })
}

/// Incidence graph of the symplectic quadrangle W(q): girth 8.
#[pyfunction]
fn gen_gq(q: u64) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: girthlab::incidence_gq(q).map_err(err)?,
    })
}

/// Searches for a Berge k-cycle; returns (edges, sdr) of a verified
/// witness, or None. Raises RuntimeError when the node budget runs out.
#[pyfunction]
#[pyo3(signature = (h, k, nontrivial = true, budget = 100_000_000))]
fn find_berge_cycle(
    h: &PyHypergraph,
    k: usize,
    nontrivial: bool,
    budget: u64,
) -> PyResult<Option<PyWitness>> {
    match berge::find_berge_cycle(&h.inner, k, mode(nontrivial), budget).map_err(err)? {
        berge::SearchOutcome::Found(w) => {
            let json = w.to_json(&h.inner, mode(nontrivial));
            Ok(Some((json.edges, json.sdr)))
        }
        berge::SearchOutcome::Absent { .. } => Ok(None),
        berge::SearchOutcome::BudgetExhausted { nodes } => Err(PyRuntimeError::new_err(format!(
            "search budget exhausted after {nodes} nodes"
        ))),
    }
}

/// True when no Berge cycle of any listed length exists.
#[pyfunction]
#[pyo3(signature = (h, lengths, nontrivial = true, budget = 100_000_000))]
fn is_free(h: &PyHypergraph, lengths: Vec<usize>, nontrivial: bool, budget: u64) -> PyResult<bool> {
    let fam =
        berge::ForbiddenFamily::new(h.inner.r(), lengths, mode(nontrivial)).map_err(err)?;
    match berge::is_free(&h.inner, &fam, budget).map_err(err)? {
        berge::FreenessOutcome::Free { .. } => Ok(true),
        berge::FreenessOutcome::Witness { .. } => Ok(false),
        berge::FreenessOutcome::Exhausted { k, nodes } => Err(PyRuntimeError::new_err(format!(
            "budget exhausted at length {k} after {nodes} nodes"
        ))),
    }
}

/// Converts a tight path into a Berge-cycle witness: (edges, sdr,
/// nontrivial).
#[pyfunction]
fn tight_path_witness(
    path: Vec<usize>,
    h: &PyHypergraph,
    k: usize,
) -> PyResult<(Vec<Vec<usize>>, Vec<usize>, bool)> {
    let w = berge::tight_path_to_witness(&path, &h.inner, k).map_err(err)?;
    let edges: Vec<Vec<usize>> = w.edge_ids.iter().map(|&i| h.inner.edge(i).to_vec()).collect();
    Ok((edges, w.sdr, w.nontrivial))
}

/// Exact independence number: (lower, upper, witness, exact).
#[pyfunction]
#[pyo3(signature = (h, budget = 10_000_000))]
fn alpha(h: &PyHypergraph, budget: u64) -> (usize, usize, Vec<usize>, bool) {
    let res = indep::alpha_exact(&h.inner, budget);
    (res.lower, res.upper, res.witness, res.exact)
}

/// Monte Carlo independence probability of a uniform s-set: (estimate,
/// half_width).
#[pyfunction]
fn indep_prob_mc(h: &PyHypergraph, s: usize, trials: u64, seed: u64) -> PyResult<(f64, f64)> {
    let est = indep::indep_prob_mc(&h.inner, s, trials, seed).map_err(err)?;
    Ok((est.estimate, est.half_width))
}

/// Canonical star system S_{d,m}.
#[pyfunction]
fn star_system(r: usize, d: usize, m: usize) -> PyResult<PyHypergraph> {
    Ok(PyHypergraph {
        inner: randbuild::star_system(&randbuild::StarSystemSpec { r, d, m })
            .map_err(err)?
            .hypergraph,
    })
}

#[pyfunction]
fn indep_prob_bound_star(d: usize, m: usize, r: usize, s: usize) -> f64 {
    randbuild::indep_prob_bound_star(d, m, r, s)
}

#[pyfunction]
fn indep_prob_bound_jn(n: usize, s: usize) -> f64 {
    randbuild::indep_prob_bound_jn(n, s)
}

/// Greedy linear 3-graph free of Berge 2-, 3- and 4-cycles; returns the
/// hypergraph and the run report as JSON.
#[pyfunction]
fn jn_supplier(n: usize, seed: u64) -> (PyHypergraph, String) {
    let jn = randbuild::jn_supplier(n, seed);
    (
        PyHypergraph {
            inner: jn.hypergraph,
        },
        serde_json::to_string(&jn.report).unwrap(),
    )
}

/// Degree pipeline: bipartite high-min-degree subgraph. Returns the
/// subgraph, (left, right) parts, the new-to-original id map and the
/// report JSON.
#[pyfunction]
#[pyo3(signature = (g, k, seed = 0, restarts = 8))]
fn deg_pipeline(
    g: &PyGraph,
    k: usize,
    seed: u64,
    restarts: usize,
) -> PyResult<PyDegPipeline> {
    let pipe = girthlab::deg_pipeline(&g.inner, k, seed, restarts).map_err(err)?;
    Ok((
        PyGraph { inner: pipe.gprime },
        (pipe.bipartition.left, pipe.bipartition.right),
        pipe.id_map,
        serde_json::to_string(&pipe.report).unwrap(),
    ))
}

/// Star placement build from a raw high-girth graph (degree pipeline
/// included). Returns the hypergraph and the trace JSON.
#[pyfunction]
#[pyo3(signature = (g, k, r = 3, m = None, seed = 0))]
fn build_t2(
    g: &PyGraph,
    k: usize,
    r: usize,
    m: Option<usize>,
    seed: u64,
) -> PyResult<(PyHypergraph, String)> {
    let pipe = girthlab::deg_pipeline(&g.inner, k, seed, 8).map_err(err)?;
    let m = m.unwrap_or_else(|| randbuild::default_multiplicity(g.inner.n(), pipe.report.c, k));
    let built = randbuild::build_stars(
        &pipe.gprime,
        &pipe.bipartition,
        k,
        r,
        m,
        seed,
        Some(pipe.report.c),
    )
    .map_err(err)?;
    Ok((
        PyHypergraph {
            inner: built.hypergraph,
        },
        serde_json::to_string(&built.trace).unwrap(),
    ))
}

/// Linear-supplier placement build from a raw girth > 8 graph.
#[pyfunction]
#[pyo3(signature = (g, seed = 0))]
fn build_t3(g: &PyGraph, seed: u64) -> PyResult<(PyHypergraph, String)> {
    let pipe = girthlab::deg_pipeline(&g.inner, 4, seed, 8).map_err(err)?;
    let built = randbuild::build_jn_cover(
        &pipe.gprime,
        &pipe.bipartition,
        seed,
        Some(pipe.report.c),
    )
    .map_err(err)?;
    Ok((
        PyHypergraph {
            inner: built.hypergraph,
        },
        serde_json::to_string(&built.trace).unwrap(),
    ))
}

/// Constructive probabilistic independent set.
#[pyfunction]
fn random_indep_set(h: &PyHypergraph, seed: u64) -> PyResult<Vec<usize>> {
    peel::random_indep_set(&h.inner, seed).map_err(err)
}

/// The composed two-case pipeline: (independent_set, report_json).
#[pyfunction]
#[pyo3(signature = (h, k, seed = 0, eps = None))]
fn pipeline(
    h: &PyHypergraph,
    k: usize,
    seed: u64,
    eps: Option<f64>,
) -> PyResult<(Vec<usize>, String)> {
    let out = peel::pipeline(
        &h.inner,
        k,
        &peel::PipelineConfig {
            seed,
            eps,
            ..Default::default()
        },
    )
    .map_err(err)?;
    Ok((
        out.independent_set,
        serde_json::to_string(&out.report).unwrap(),
    ))
}

/// Number of distinct length-`len` cycle subgraphs.
#[pyfunction]
#[pyo3(signature = (g, len, budget = 100_000_000))]
fn count_cycles(g: &PyGraph, len: usize, budget: u64) -> PyResult<u64> {
    census::count_cycles(&g.inner, len, budget).map_err(err)
}

/// Cycles through a fixed edge: (count, union_edge_count).
#[pyfunction]
#[pyo3(signature = (g, u, v, len, budget = 100_000_000))]
fn cycles_through_edge(
    g: &PyGraph,
    u: usize,
    v: usize,
    len: usize,
    budget: u64,
) -> PyResult<(u64, usize)> {
    let (m, union) = census::cycles_through_edge(&g.inner, (u, v), len, budget).map_err(err)?;
    Ok((m, union.edge_count()))
}

/// Union-bound accounting for a recorded build trace (JSON in, JSON out):
/// an upper bound on the log of the expected number of independent t-sets.
#[pyfunction]
#[pyo3(signature = (trace_json, t, xa_count = None))]
fn union_bound(trace_json: &str, t: usize, xa_count: Option<usize>) -> PyResult<String> {
    let trace: randbuild::ConstructionTrace =
        serde_json::from_str(trace_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let rep = indep::union_bound_report(&trace, t, xa_count).map_err(err)?;
    Ok(serde_json::to_string(&rep).unwrap())
}

/// Certificate JSON for a hypergraph against a forbidden family.
#[pyfunction]
#[pyo3(signature = (h, lengths, nontrivial = true, budget = 100_000_000))]
fn certify_json(
    h: &PyHypergraph,
    lengths: Vec<usize>,
    nontrivial: bool,
    budget: u64,
) -> PyResult<String> {
    let fam =
        berge::ForbiddenFamily::new(h.inner.r(), lengths, mode(nontrivial)).map_err(err)?;
    let cert = certify::certify(&h.inner, &fam, budget, budget).map_err(err)?;
    Ok(serde_json::to_string_pretty(&cert).unwrap())
}

/// Re-verifies a certificate JSON; returns (ok, details).
#[pyfunction]
fn verify_cert_json(text: &str) -> PyResult<(bool, Vec<String>)> {
    let cert: certify::Certificate =
        serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let rep = certify::verify(&cert);
    Ok((rep.ok, rep.detail))
}

#[pymodule]
fn pyberge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyHypergraph>()?;
    m.add_function(wrap_pyfunction!(gen_pp, m)?)?;
    m.add_function(wrap_pyfunction!(gen_gq, m)?)?;
    m.add_function(wrap_pyfunction!(find_berge_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(is_free, m)?)?;
    m.add_function(wrap_pyfunction!(tight_path_witness, m)?)?;
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(indep_prob_mc, m)?)?;
    m.add_function(wrap_pyfunction!(star_system, m)?)?;
    m.add_function(wrap_pyfunction!(indep_prob_bound_star, m)?)?;
    m.add_function(wrap_pyfunction!(indep_prob_bound_jn, m)?)?;
    m.add_function(wrap_pyfunction!(jn_supplier, m)?)?;
    m.add_function(wrap_pyfunction!(deg_pipeline, m)?)?;
    m.add_function(wrap_pyfunction!(build_t2, m)?)?;
    m.add_function(wrap_pyfunction!(build_t3, m)?)?;
    m.add_function(wrap_pyfunction!(random_indep_set, m)?)?;
    m.add_function(wrap_pyfunction!(pipeline, m)?)?;
    m.add_function(wrap_pyfunction!(count_cycles, m)?)?;
    m.add_function(wrap_pyfunction!(cycles_through_edge, m)?)?;
    m.add_function(wrap_pyfunction!(union_bound, m)?)?;
    m.add_function(wrap_pyfunction!(certify_json, m)?)?;
    m.add_function(wrap_pyfunction!(verify_cert_json, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
