//! r-uniform hypergraphs: families of distinct r-element subsets of a
//! labeled vertex set, stored in canonical (sorted) order.

use crate::error::{Error, Result};
use crate::graph::VertexId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<VertexId>>,
    incidence: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds an r-graph from an edge list. Every edge must have exactly `r`
    /// distinct vertices below `n`; duplicate edges are rejected. Edges are
    /// normalized (sorted internally and lexicographically overall).
    pub fn new(r: usize, n: usize, edges: impl IntoIterator<Item = Vec<VertexId>>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidParameter(format!("uniformity r = {r} < 2")));
        }
        let mut norm: Vec<Vec<usize>> = Vec::new();
        for mut e in edges {
            if e.len() != r {
                return Err(Error::WrongArity { edge: e, r });
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex { edge: e });
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { v, n });
            }
            norm.push(e);
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge {
                edge: w[0].clone(),
            });
        }
        let mut h = Self {
            r,
            n,
            edges: norm,
            incidence: Vec::new(),
        };
        h.rebuild_incidence();
        Ok(h)
    }

    pub fn empty(r: usize, n: usize) -> Self {
        Self {
            r,
            n,
            edges: Vec::new(),
            incidence: vec![Vec::new(); n],
        }
    }

    fn rebuild_incidence(&mut self) {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        self.incidence = inc;
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<VertexId>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[VertexId] {
        &self.edges[i]
    }

    /// Edge indices incident to `v`.
    pub fn incident(&self, v: VertexId) -> &[usize] {
        &self.incidence[v]
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: VertexId) -> Result<usize> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        Ok(self.incidence[v].len())
    }

    /// Number of edges containing both `u` and `v`; defined for 3-graphs.
    pub fn codegree(&self, u: VertexId, v: VertexId) -> Result<usize> {
        if self.r != 3 {
            return Err(Error::NotThreeUniform { r: self.r });
        }
        if u == v {
            return Err(Error::CodegreeSameVertex);
        }
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { v: w, n: self.n });
            }
        }
        let (a, b) = if self.incidence[u].len() <= self.incidence[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        Ok(self.incidence[a]
            .iter()
            .filter(|&&i| self.edges[i].binary_search(&b).is_ok())
            .count())
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.incidence.iter().map(|l| l.len()).min().unwrap_or(0)
    }

    /// Average degree r·|H|/n.
    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            (self.r * self.edges.len()) as f64 / self.n as f64
        }
    }

    /// Induced sub-hypergraph on `verts`, relabeled densely; the map sends
    /// new ids back to the original ids.
    pub fn induced(&self, verts: &[VertexId]) -> (Hypergraph, Vec<VertexId>) {
        let mut keep: Vec<VertexId> = verts.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut relabel = vec![usize::MAX; self.n];
        for (new, &old) in keep.iter().enumerate() {
            relabel[old] = new;
        }
        let edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| relabel[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| relabel[v]).collect())
            .collect();
        let h = Hypergraph::new(self.r, keep.len(), edges)
            .expect("induced subgraph of a valid hypergraph is valid");
        (h, keep)
    }

    /// True when no edge lies entirely inside `set`.
    pub fn is_independent(&self, set: &[VertexId]) -> bool {
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        !self
            .edges
            .iter()
            .any(|e| e.iter().all(|&v| inside[v]))
    }

    /// Sub-hypergraph keeping only the listed edge indices (same vertex set).
    pub fn restrict_edges(&self, keep: &[usize]) -> Hypergraph {
        let edges: Vec<Vec<usize>> = keep.iter().map(|&i| self.edges[i].clone()).collect();
        Hypergraph::new(self.r, self.n, edges).expect("edge subset of a valid hypergraph is valid")
    }

    /// Index of an edge given by content, if present.
    pub fn find_edge(&self, e: &[VertexId]) -> Option<usize> {
        let mut key = e.to_vec();
        key.sort_unstable();
        self.edges.binary_search(&key).ok()
    }

    /// Seeded uniform random r-graph with m distinct edges.
    pub fn random(r: usize, n: usize, m: usize, seed: u64) -> Hypergraph {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut set = std::collections::BTreeSet::new();
        let mut verts: Vec<usize> = (0..n).collect();
        let mut attempts = 0u32;
        while set.len() < m && attempts < 100_000 {
            verts.shuffle(&mut rng);
            let mut e: Vec<usize> = verts[..r.min(n)].to_vec();
            if e.len() < r {
                break;
            }
            e.sort_unstable();
            set.insert(e);
            attempts += 1;
        }
        Hypergraph::new(r, n, set).expect("sampled edges are valid")
    }
}
