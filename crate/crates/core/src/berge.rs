//! Exact detection and verification of Berge cycles.
//!
//! A Berge k-cycle is an ordered family of k distinct edges e1..ek such that
//! the cyclic intersections e1∩e2, ..., ek∩e1 admit a system of distinct
//! representatives. It is non-trivial when the common intersection of all k
//! edges is empty. Detection is exhaustive backtracking over edge sequences
//! with SDR-feasibility pruning and canonical symmetry breaking, so a
//! negative answer is a proof of absence (within the node budget).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::hypergraph::Hypergraph;

/// Default backtracking node budget for the detector.
pub const DEFAULT_DETECT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Any Berge cycle counts (the family B_k).
    #[serde(rename = "trivial-allowed")]
    TrivialAllowed,
    /// Only cycles whose k edges have empty common intersection.
    #[serde(rename = "nontrivial")]
    NontrivialOnly,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::TrivialAllowed => write!(f, "trivial-allowed"),
            Mode::NontrivialOnly => write!(f, "nontrivial"),
        }
    }
}

/// A set of forbidden Berge-cycle lengths under one mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenFamily {
    pub r: usize,
    pub lengths: Vec<usize>,
    pub mode: Mode,
}

impl ForbiddenFamily {
    pub fn new(r: usize, mut lengths: Vec<usize>, mode: Mode) -> Result<Self> {
        lengths.sort_unstable();
        lengths.dedup();
        if lengths.iter().any(|&k| k < 2) {
            return Err(Error::InvalidParameter(
                "cycle lengths must be at least 2".into(),
            ));
        }
        Ok(Self { r, lengths, mode })
    }
}

/// An ordered edge sequence together with its SDR and, for non-trivial
/// witnesses, per-vertex exclusion evidence: for every vertex of the first
/// edge, the position of an edge avoiding it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BergeWitness {
    pub edge_ids: Vec<usize>,
    pub sdr: Vec<VertexId>,
    pub nontrivial: bool,
    pub exclusion: Option<Vec<(VertexId, usize)>>,
}

/// Witness in the external JSON shape: edges inlined as vertex lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub k: usize,
    pub mode: String,
    pub edges: Vec<Vec<VertexId>>,
    pub sdr: Vec<VertexId>,
}

impl BergeWitness {
    pub fn k(&self) -> usize {
        self.edge_ids.len()
    }

    /// Builds a witness from an edge sequence and SDR, computing the
    /// non-triviality flag and its exclusion evidence from `h`.
    pub fn assemble(h: &Hypergraph, edge_ids: Vec<usize>, sdr: Vec<VertexId>) -> Self {
        let common = common_intersection(h, &edge_ids);
        let exclusion = if common.is_empty() {
            Some(exclusion_evidence(h, &edge_ids))
        } else {
            None
        };
        Self {
            edge_ids,
            sdr,
            nontrivial: common.is_empty(),
            exclusion,
        }
    }

    pub fn to_json(&self, h: &Hypergraph, mode: Mode) -> WitnessJson {
        WitnessJson {
            k: self.k(),
            mode: mode.to_string(),
            edges: self
                .edge_ids
                .iter()
                .map(|&i| h.edge(i).to_vec())
                .collect(),
            sdr: self.sdr.clone(),
        }
    }

    /// Rebinds a JSON witness to `h` by looking up every edge by content.
    pub fn from_json(json: &WitnessJson, h: &Hypergraph) -> Result<Self> {
        let mut edge_ids = Vec::with_capacity(json.edges.len());
        for e in &json.edges {
            let idx = h.find_edge(e).ok_or(Error::MissingEdge { edge: e.clone() })?;
            edge_ids.push(idx);
        }
        let common = common_intersection(h, &edge_ids);
        let exclusion = if common.is_empty() {
            Some(exclusion_evidence(h, &edge_ids))
        } else {
            None
        };
        Ok(Self {
            edge_ids,
            sdr: json.sdr.clone(),
            nontrivial: common.is_empty(),
            exclusion,
        })
    }
}

fn intersect(a: &[VertexId], b: &[VertexId]) -> Vec<VertexId> {
    a.iter().filter(|v| b.contains(v)).copied().collect()
}

fn common_intersection(h: &Hypergraph, edge_ids: &[usize]) -> Vec<VertexId> {
    let mut acc: Vec<VertexId> = h.edge(edge_ids[0]).to_vec();
    for &i in &edge_ids[1..] {
        acc.retain(|v| h.edge(i).contains(v));
        if acc.is_empty() {
            break;
        }
    }
    acc
}

/// For each vertex of the first edge, the position of some edge avoiding it.
/// Only meaningful when the common intersection is empty.
fn exclusion_evidence(h: &Hypergraph, edge_ids: &[usize]) -> Vec<(VertexId, usize)> {
    h.edge(edge_ids[0])
        .iter()
        .map(|&w| {
            let pos = edge_ids
                .iter()
                .position(|&i| !h.edge(i).contains(&w))
                .expect("empty common intersection provides an excluder");
            (w, pos)
        })
        .collect()
}

/// Maximum bipartite matching from sets to elements (Kuhn's augmenting
/// paths). Returns one representative per set, all distinct, or None.
/// Candidates are tried in ascending vertex order, so the result is
/// deterministic: ties break toward lower vertex ids.
pub fn sdr(sets: &[Vec<VertexId>]) -> Option<Vec<VertexId>> {
    let mut verts: Vec<VertexId> = sets.iter().flatten().copied().collect();
    verts.sort_unstable();
    verts.dedup();
    if verts.len() < sets.len() {
        return None;
    }
    let vid = |v: VertexId| verts.binary_search(&v).unwrap();

    let mut owner: Vec<Option<usize>> = vec![None; verts.len()];

    fn augment(
        set: usize,
        sets: &[Vec<VertexId>],
        vid: &dyn Fn(VertexId) -> usize,
        owner: &mut Vec<Option<usize>>,
        visited: &mut Vec<bool>,
    ) -> bool {
        let mut choices: Vec<VertexId> = sets[set].clone();
        choices.sort_unstable();
        for v in choices {
            let slot = vid(v);
            if visited[slot] {
                continue;
            }
            visited[slot] = true;
            if owner[slot].is_none() || augment(owner[slot].unwrap(), sets, vid, owner, visited) {
                owner[slot] = Some(set);
                return true;
            }
        }
        false
    }

    for set in 0..sets.len() {
        let mut visited = vec![false; verts.len()];
        if !augment(set, sets, &vid, &mut owner, &mut visited) {
            return None;
        }
    }

    let mut reps = vec![usize::MAX; sets.len()];
    for (slot, o) in owner.iter().enumerate() {
        if let Some(set) = o {
            reps[*set] = verts[slot];
        }
    }
    Some(reps)
}

/// Checks a witness against `h` from scratch: distinct edges, distinct SDR
/// vertices, cyclic membership, and (in non-trivial mode) empty common
/// intersection. Nothing is trusted from the witness itself beyond the edge
/// ids and SDR.
pub fn verify_witness(h: &Hypergraph, w: &BergeWitness, mode: Mode) -> Result<bool> {
    let k = w.edge_ids.len();
    if k < 2 || w.sdr.len() != k {
        return Ok(false);
    }
    for &i in &w.edge_ids {
        if i >= h.edge_count() {
            return Err(Error::InvalidParameter(format!(
                "edge index {i} out of range ({} edges)",
                h.edge_count()
            )));
        }
    }
    let mut ids = w.edge_ids.clone();
    ids.sort_unstable();
    ids.dedup();
    if ids.len() != k {
        return Ok(false);
    }
    let mut reps = w.sdr.clone();
    reps.sort_unstable();
    reps.dedup();
    if reps.len() != k {
        return Ok(false);
    }
    for i in 0..k {
        let v = w.sdr[i];
        let e = h.edge(w.edge_ids[i]);
        let f = h.edge(w.edge_ids[(i + 1) % k]);
        if !e.contains(&v) || !f.contains(&v) {
            return Ok(false);
        }
    }
    // A set non-triviality flag must be backed by valid evidence: for every
    // vertex of the first edge, a position whose edge avoids it.
    if w.nontrivial {
        let Some(evidence) = &w.exclusion else {
            return Ok(false);
        };
        for &v in h.edge(w.edge_ids[0]) {
            let Some(&(_, pos)) = evidence.iter().find(|(u, _)| *u == v) else {
                return Ok(false);
            };
            if pos >= k || h.edge(w.edge_ids[pos]).contains(&v) {
                return Ok(false);
            }
        }
    }
    if mode == Mode::NontrivialOnly && !common_intersection(h, &w.edge_ids).is_empty() {
        return Ok(false);
    }
    Ok(true)
}

/// Outcome of a single cycle search. Budget exhaustion is a distinct state
/// so absence claims are never silently weakened.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(BergeWitness),
    Absent { nodes: u64 },
    BudgetExhausted { nodes: u64 },
}

struct Searcher<'a> {
    h: &'a Hypergraph,
    k: usize,
    mode: Mode,
    neighbors: Vec<Vec<usize>>,
    budget: u64,
    nodes: u64,
    seq: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Searcher<'a> {
    fn new(h: &'a Hypergraph, k: usize, mode: Mode, budget: u64) -> Self {
        let m = h.edge_count();
        let mut neighbors = vec![Vec::new(); m];
        for (i, e) in h.edges().iter().enumerate() {
            let mut nbr: Vec<usize> = e
                .iter()
                .flat_map(|&v| h.incident(v).iter().copied())
                .filter(|&j| j != i)
                .collect();
            nbr.sort_unstable();
            nbr.dedup();
            neighbors[i] = nbr;
        }
        Self {
            h,
            k,
            mode,
            neighbors,
            budget,
            nodes: 0,
            seq: Vec::with_capacity(k),
            used: vec![false; m],
        }
    }

    fn partial_sets(&self) -> Vec<Vec<VertexId>> {
        (0..self.seq.len() - 1)
            .map(|i| intersect(self.h.edge(self.seq[i]), self.h.edge(self.seq[i + 1])))
            .collect()
    }

    fn close(&self) -> Option<BergeWitness> {
        let first = self.seq[0];
        let last = *self.seq.last().unwrap();
        // Reflection symmetry: fix the orientation by the second edge id.
        if self.k >= 3 && self.seq[1] > self.seq[self.k - 1] {
            return None;
        }
        let mut sets = self.partial_sets();
        let closing = intersect(self.h.edge(last), self.h.edge(first));
        if closing.is_empty() {
            return None;
        }
        sets.push(closing);
        let reps = sdr(&sets)?;
        let common = common_intersection(self.h, &self.seq);
        if self.mode == Mode::NontrivialOnly && !common.is_empty() {
            return None;
        }
        let exclusion = if common.is_empty() {
            Some(exclusion_evidence(self.h, &self.seq))
        } else {
            None
        };
        Some(BergeWitness {
            edge_ids: self.seq.clone(),
            sdr: reps,
            nontrivial: common.is_empty(),
            exclusion,
        })
    }

    fn extend(&mut self) -> std::result::Result<Option<BergeWitness>, u64> {
        if self.seq.len() == self.k {
            return Ok(self.close());
        }
        let last = *self.seq.last().unwrap();
        let first = self.seq[0];
        for idx in 0..self.neighbors[last].len() {
            let cand = self.neighbors[last][idx];
            if cand <= first || self.used[cand] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(self.nodes);
            }
            self.seq.push(cand);
            self.used[cand] = true;
            // Prune: the partial chain of intersections must itself admit
            // an SDR, otherwise no completion can.
            let feasible = sdr(&self.partial_sets()).is_some();
            let found = if feasible { self.extend()? } else { None };
            self.used[cand] = false;
            self.seq.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// Searches for a Berge k-cycle. Deterministic: edges are explored in
/// canonical order, the first edge of a found cycle is minimal among its
/// edges, and for k >= 3 the orientation with the smaller second edge id is
/// reported. Every returned witness re-passes `verify_witness`.
pub fn find_berge_cycle(
    h: &Hypergraph,
    k: usize,
    mode: Mode,
    budget: u64,
) -> Result<SearchOutcome> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("cycle length {k} < 2")));
    }
    if h.edge_count() < k {
        return Ok(SearchOutcome::Absent { nodes: 0 });
    }
    let mut s = Searcher::new(h, k, mode, budget);
    for first in 0..h.edge_count() {
        s.seq.clear();
        s.seq.push(first);
        s.used[first] = true;
        let res = s.extend();
        s.used[first] = false;
        match res {
            Ok(Some(w)) => {
                debug_assert!(verify_witness(h, &w, mode).unwrap_or(false));
                if !verify_witness(h, &w, mode)? {
                    return Err(Error::Invariant(
                        "search produced a witness that fails verification".into(),
                    ));
                }
                return Ok(SearchOutcome::Found(w));
            }
            Ok(None) => {}
            Err(nodes) => return Ok(SearchOutcome::BudgetExhausted { nodes }),
        }
    }
    Ok(SearchOutcome::Absent { nodes: s.nodes })
}

/// Freeness of `h` with respect to a whole family of cycle lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreenessOutcome {
    Free { nodes: u64 },
    Witness { k: usize, witness: BergeWitness },
    Exhausted { k: usize, nodes: u64 },
}

pub fn is_free(h: &Hypergraph, fam: &ForbiddenFamily, budget: u64) -> Result<FreenessOutcome> {
    let mut total = 0u64;
    for &k in &fam.lengths {
        match find_berge_cycle(h, k, fam.mode, budget)? {
            SearchOutcome::Found(w) => {
                return Ok(FreenessOutcome::Witness { k, witness: w });
            }
            SearchOutcome::Absent { nodes } => total += nodes,
            SearchOutcome::BudgetExhausted { nodes } => {
                return Ok(FreenessOutcome::Exhausted { k, nodes });
            }
        }
    }
    Ok(FreenessOutcome::Free { nodes: total })
}

/// Re-expresses a witness for an induced subgraph as a witness for the host
/// hypergraph: vertices go through `vmap` (sub id -> host id), edges are
/// looked up by content, and the non-triviality evidence is recomputed.
pub fn rebind_witness(
    w: &BergeWitness,
    sub: &Hypergraph,
    host: &Hypergraph,
    vmap: &[VertexId],
) -> Result<BergeWitness> {
    let mut edge_ids = Vec::with_capacity(w.edge_ids.len());
    for &i in &w.edge_ids {
        let mapped: Vec<usize> = sub.edge(i).iter().map(|&v| vmap[v]).collect();
        let idx = host
            .find_edge(&mapped)
            .ok_or(Error::MissingEdge { edge: mapped })?;
        edge_ids.push(idx);
    }
    let sdr: Vec<usize> = w.sdr.iter().map(|&v| vmap[v]).collect();
    let common = common_intersection(host, &edge_ids);
    let exclusion = if common.is_empty() {
        Some(exclusion_evidence(host, &edge_ids))
    } else {
        None
    };
    Ok(BergeWitness {
        edge_ids,
        sdr,
        nontrivial: common.is_empty(),
        exclusion,
    })
}

/// Converts a tight path v1..v(k+2) (edges {vi, vi+1, vi+2}, all present in
/// `h`) into a Berge k-cycle witness with the explicit SDR over a reordered
/// edge sequence. For k >= 4 the witness is non-trivial; for k = 3 the three
/// edges share the middle vertex, so the witness is a trivial Berge cycle
/// and is flagged as such.
pub fn tight_path_to_witness(path: &[VertexId], h: &Hypergraph, k: usize) -> Result<BergeWitness> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "tight path conversion needs k >= 3, got {k}"
        )));
    }
    if path.len() != k + 2 {
        return Err(Error::InvalidParameter(format!(
            "tight path for k = {k} needs {} vertices, got {}",
            k + 2,
            path.len()
        )));
    }
    let mut sorted = path.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::RepeatedVertex {
            edge: path.to_vec(),
        });
    }
    // edge_idx[i] is the index in h of {v(i+1), v(i+2), v(i+3)} (1-based i).
    let mut edge_idx = Vec::with_capacity(k);
    for i in 0..k {
        let e = vec![path[i], path[i + 1], path[i + 2]];
        let idx = h.find_edge(&e).ok_or(Error::MissingEdge { edge: e })?;
        edge_idx.push(idx);
    }

    // 1-based positions of edges and SDR vertices in the reordered cycle.
    let (edge_order, sdr_order): (Vec<usize>, Vec<usize>) = if k.is_multiple_of(2) {
        let mut eo = vec![1];
        eo.extend((2..=k).step_by(2)); // e2, e4, ..., ek
        eo.extend((3..=k - 1).rev().step_by(2)); // e(k-1), ..., e3
        let mut so: Vec<usize> = (2..=k).step_by(2).collect(); // v2, ..., vk
        so.push(k + 1);
        so.extend((3..=k - 1).rev().step_by(2)); // v(k-1), ..., v3
        (eo, so)
    } else {
        let mut eo = vec![1];
        eo.extend((2..=k - 1).step_by(2)); // e2, e4, ..., e(k-1)
        eo.push(k);
        eo.extend((3..=k - 2).rev().step_by(2)); // e(k-2), ..., e3
        let mut so: Vec<usize> = (2..=k + 1).step_by(2).collect(); // v2, ..., v(k+1)
        so.extend((3..=k).rev().step_by(2)); // vk, v(k-2), ..., v3
        (eo, so)
    };
    debug_assert_eq!(edge_order.len(), k);
    debug_assert_eq!(sdr_order.len(), k);

    let edge_ids: Vec<usize> = edge_order.iter().map(|&i| edge_idx[i - 1]).collect();
    let reps: Vec<VertexId> = sdr_order.iter().map(|&i| path[i - 1]).collect();

    let common = common_intersection(h, &edge_ids);
    let exclusion = if common.is_empty() {
        Some(exclusion_evidence(h, &edge_ids))
    } else {
        None
    };
    let w = BergeWitness {
        edge_ids,
        sdr: reps,
        nontrivial: common.is_empty(),
        exclusion,
    };
    let mode = if w.nontrivial {
        Mode::NontrivialOnly
    } else {
        Mode::TrivialAllowed
    };
    if !verify_witness(h, &w, mode)? {
        return Err(Error::Invariant(
            "tight path produced an invalid witness".into(),
        ));
    }
    Ok(w)
}
