//! Exact counting of fixed-length cycles, globally and through a fixed
//! edge, with the union-subgraph and edge-count inequality checks used by
//! the upper-bound pipeline.
//!
//! Cycle identity is the subgraph, not the closed walk: each cycle is
//! counted once via its canonical representative (minimal start vertex,
//! lexicographically smaller direction).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Default DFS node budget for exact enumeration.
pub const DEFAULT_CENSUS_BUDGET: u64 = 100_000_000;

/// Exact census of length-`len` cycles: total count and per-edge counts
/// (indexed like `g.edges()`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CycleCensus {
    pub len: usize,
    pub total: u64,
    pub per_edge: Vec<u64>,
}

struct Enumerator<'a> {
    g: &'a Graph,
    len: usize,
    budget: u64,
    nodes: u64,
    path: Vec<VertexId>,
    on_path: Vec<bool>,
}

impl<'a> Enumerator<'a> {
    fn new(g: &'a Graph, len: usize, budget: u64) -> Self {
        Self {
            g,
            len,
            budget,
            nodes: 0,
            path: Vec::with_capacity(len),
            on_path: vec![false; g.n()],
        }
    }

    /// Extends the current path and reports each canonical cycle found.
    fn dfs(&mut self, emit: &mut dyn FnMut(&[VertexId])) -> Result<()> {
        let last = *self.path.last().unwrap();
        let start = self.path[0];
        if self.path.len() == self.len {
            // Canonical direction: second vertex smaller than last.
            if self.path[1] < last && self.g.has_edge(last, start) {
                emit(&self.path);
            }
            return Ok(());
        }
        for &w in self.g.neighbors(last) {
            // Minimal start vertex breaks rotation symmetry.
            if w <= start || self.on_path[w] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExhausted {
                    budget: self.budget,
                });
            }
            self.path.push(w);
            self.on_path[w] = true;
            self.dfs(emit)?;
            self.on_path[w] = false;
            self.path.pop();
        }
        Ok(())
    }
}

fn enumerate_cycles(
    g: &Graph,
    len: usize,
    budget: u64,
    emit: &mut dyn FnMut(&[VertexId]),
) -> Result<u64> {
    if len < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle length {len} < 3"
        )));
    }
    let mut e = Enumerator::new(g, len, budget);
    for s in 0..g.n() {
        e.path.clear();
        e.path.push(s);
        e.on_path[s] = true;
        let res = e.dfs(emit);
        e.on_path[s] = false;
        res?;
    }
    Ok(e.nodes)
}

/// Number of distinct `len`-cycle subgraphs of `g`.
pub fn count_cycles(g: &Graph, len: usize, budget: u64) -> Result<u64> {
    let mut count = 0u64;
    enumerate_cycles(g, len, budget, &mut |_| count += 1)?;
    Ok(count)
}

/// Total and per-edge counts in one enumeration pass.
pub fn census(g: &Graph, len: usize, budget: u64) -> Result<CycleCensus> {
    let edge_index: std::collections::HashMap<(usize, usize), usize> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i))
        .collect();
    let mut per_edge = vec![0u64; g.edge_count()];
    let mut total = 0u64;
    enumerate_cycles(g, len, budget, &mut |cycle| {
        total += 1;
        for i in 0..cycle.len() {
            let u = cycle[i];
            let v = cycle[(i + 1) % cycle.len()];
            per_edge[edge_index[&(u.min(v), u.max(v))]] += 1;
        }
    })?;
    Ok(CycleCensus {
        len,
        total,
        per_edge,
    })
}

/// Enumerates every `len`-cycle through the edge `e` exactly once, passing
/// the full vertex sequence (starting at `min(e)`, ending at `max(e)`) to
/// `emit`. Each cycle through e corresponds to exactly one simple path
/// between the endpoints of e, so no deduplication is needed.
pub fn for_each_cycle_through_edge(
    g: &Graph,
    e: (VertexId, VertexId),
    len: usize,
    budget: u64,
    emit: &mut dyn FnMut(&[VertexId]),
) -> Result<u64> {
    let (u, v) = (e.0.min(e.1), e.0.max(e.1));
    if !g.has_edge(u, v) {
        return Err(Error::MissingEdge { edge: vec![u, v] });
    }
    if len < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle length {len} < 3"
        )));
    }
    let mut path = vec![u];
    let mut on_path = vec![false; g.n()];
    on_path[u] = true;
    let mut nodes = 0u64;

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        g: &Graph,
        v: usize,
        len: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        nodes: &mut u64,
        budget: u64,
        emit: &mut dyn FnMut(&[VertexId]),
    ) -> Result<()> {
        let last = *path.last().unwrap();
        if path.len() == len - 1 {
            if g.has_edge(last, v) {
                path.push(v);
                emit(path);
                path.pop();
            }
            return Ok(());
        }
        for &w in g.neighbors(last) {
            if on_path[w] || w == v {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::BudgetExhausted { budget });
            }
            path.push(w);
            on_path[w] = true;
            dfs(g, v, len, path, on_path, nodes, budget, emit)?;
            on_path[w] = false;
            path.pop();
        }
        Ok(())
    }

    dfs(g, v, len, &mut path, &mut on_path, &mut nodes, budget, emit)?;
    Ok(nodes)
}

/// Count of `len`-cycles through the edge `e` and the union subgraph of all
/// of them (on the full vertex set; empty when no such cycle exists).
pub fn cycles_through_edge(
    g: &Graph,
    e: (VertexId, VertexId),
    len: usize,
    budget: u64,
) -> Result<(u64, Graph)> {
    let mut count = 0u64;
    let mut union: std::collections::BTreeSet<(usize, usize)> = std::collections::BTreeSet::new();
    for_each_cycle_through_edge(g, e, len, budget, &mut |cycle| {
        count += 1;
        for i in 0..cycle.len() {
            let a = cycle[i];
            let b = cycle[(i + 1) % cycle.len()];
            union.insert((a.min(b), a.max(b)));
        }
    })?;
    let union_graph = Graph::new(g.n(), union).expect("union of cycle edges is valid");
    Ok((count, union_graph))
}

/// Check of the edge-count inequality on the union subgraph: a graph with m
/// cycles of length 2k through one edge has at least m^(1/(k-1))/2 edges.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BigcpnReport {
    pub k: usize,
    pub edge: (VertexId, VertexId),
    pub m: u64,
    pub union_edges: usize,
    pub bound: f64,
    pub ok: bool,
}

pub fn bigcpn_check(
    g: &Graph,
    e: (VertexId, VertexId),
    k: usize,
    budget: u64,
) -> Result<BigcpnReport> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k = {k} < 2")));
    }
    let (m, union) = cycles_through_edge(g, e, 2 * k, budget)?;
    let bound = if m == 0 {
        0.0
    } else {
        (m as f64).powf(1.0 / (k as f64 - 1.0)) / 2.0
    };
    Ok(BigcpnReport {
        k,
        edge: (e.0.min(e.1), e.0.max(e.1)),
        m,
        union_edges: union.edge_count(),
        bound,
        ok: union.edge_count() as f64 >= bound,
    })
}

/// Observational supersaturation report: the density coefficient
/// b = |E| / n^(1+1/k), the exact count of 2k-cycles, and the implied
/// constant count / (b^2k n^2). Nothing is asserted; the underlying
/// constants are nonconstructive.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SupersatReport {
    pub k: usize,
    pub n: usize,
    pub edges: usize,
    pub b: f64,
    pub count: u64,
    pub gamma_hat: f64,
}

pub fn supersat_report(g: &Graph, k: usize, budget: u64) -> Result<SupersatReport> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k = {k} < 2")));
    }
    let n = g.n();
    let b = if n == 0 {
        0.0
    } else {
        g.edge_count() as f64 / (n as f64).powf(1.0 + 1.0 / k as f64)
    };
    let count = count_cycles(g, 2 * k, budget)?;
    let gamma_hat = if b > 0.0 && n > 0 {
        count as f64 / (b.powi(2 * k as i32) * (n as f64) * (n as f64))
    } else {
        0.0
    };
    Ok(SupersatReport {
        k,
        n,
        edges: g.edge_count(),
        b,
        count,
        gamma_hat,
    })
}
