//! Simple undirected graphs with dense 0-based vertex ids.
//!
//! Edges are stored sorted (`u < v`, lexicographic order) so that equal
//! graphs have equal representations and serialization is deterministic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense vertex index, valid in `[0, n)` of its host structure.
pub type VertexId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    adj: Vec<Vec<VertexId>>,
}

impl Graph {
    /// Builds a graph from an edge list. Rejects loops, duplicate edges and
    /// out-of-range endpoints. Edge order and endpoint order are normalized.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        let mut norm: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::RepeatedVertex { edge: vec![a, b] });
            }
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { v, n });
                }
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge {
                edge: vec![w[0].0, w[0].1],
            });
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        // Neighbor lists come out sorted because the edge list is sorted,
        // except for the second endpoints; sort to be safe.
        for l in &mut adj {
            l.sort_unstable();
        }
        Ok(Self {
            n,
            edges: norm,
            adj,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            2.0 * self.edges.len() as f64 / self.n as f64
        }
    }

    /// Induced subgraph on `verts`, relabeled densely. The returned map sends
    /// each new id to the original id it came from.
    pub fn induced(&self, verts: &[VertexId]) -> (Graph, Vec<VertexId>) {
        let mut keep: Vec<VertexId> = verts.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut relabel = vec![usize::MAX; self.n];
        for (new, &old) in keep.iter().enumerate() {
            relabel[old] = new;
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| relabel[u] != usize::MAX && relabel[v] != usize::MAX)
            .map(|&(u, v)| (relabel[u], relabel[v]))
            .collect();
        let g = Graph::new(keep.len(), edges).expect("induced subgraph of a valid graph is valid");
        (g, keep)
    }

    /// Proper 2-coloring when the graph is bipartite (per component), else None.
    pub fn bipartite_coloring(&self) -> Option<Vec<bool>> {
        let mut color = vec![None; self.n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &w in &self.adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    /// Replaces every edge by a path of `t` edges (t >= 1). Each cycle length
    /// is multiplied by `t`, so the girth scales accordingly. Subdivision
    /// vertices are appended after the original ids.
    pub fn subdivide(&self, t: usize) -> Graph {
        assert!(t >= 1);
        if t == 1 {
            return self.clone();
        }
        let mut next = self.n;
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            let mut prev = u;
            for _ in 0..t - 1 {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            edges.push((prev, v));
        }
        Graph::new(next, edges).expect("subdivision preserves validity")
    }

    /// Seeded G(n, m): m distinct edges drawn uniformly without replacement.
    pub fn random_gnm(n: usize, m: usize, seed: u64) -> Graph {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let max = n * n.saturating_sub(1) / 2;
        let m = m.min(max);
        let mut set = std::collections::BTreeSet::new();
        while set.len() < m {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v {
                set.insert((u.min(v), u.max(v)));
            }
        }
        Graph::new(n, set).expect("sampled edges are valid")
    }
}

/// A two-sided vertex split. For a bipartite subgraph every edge crosses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub left: Vec<VertexId>,
    pub right: Vec<VertexId>,
}

impl Bipartition {
    /// Checks the defining invariants against `g`: sides disjoint, their
    /// union covers all vertices, and every edge of `g` crosses.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut side = vec![None; g.n()];
        for &v in &self.left {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { v, n: g.n() });
            }
            side[v] = Some(false);
        }
        for &v in &self.right {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { v, n: g.n() });
            }
            if side[v].is_some() {
                return Err(Error::Invariant(format!("vertex {v} on both sides")));
            }
            side[v] = Some(true);
        }
        if side.iter().any(|s| s.is_none()) {
            return Err(Error::Invariant("bipartition does not cover all vertices".into()));
        }
        for &(u, v) in g.edges() {
            if side[u] == side[v] {
                return Err(Error::Invariant(format!("edge ({u},{v}) does not cross")));
            }
        }
        Ok(())
    }

    /// Membership lookup: `true` for right-side vertices.
    pub fn side_of(&self, n: usize) -> Vec<bool> {
        let mut side = vec![false; n];
        for &v in &self.right {
            side[v] = true;
        }
        side
    }
}
