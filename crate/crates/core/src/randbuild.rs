//! Randomized lower-bound constructions: canonical star systems, seeded
//! placement of star systems (or of short-cycle-free linear 3-graphs) on the
//! neighborhoods of a high-girth bipartite graph, and the closed-form
//! independence-probability bounds that drive the union-bound accounting.

use serde::{Deserialize, Serialize};

use crate::berge;
use crate::error::{Error, Result};
use crate::girth::girth;
use crate::graph::{Bipartition, Graph, VertexId};
use crate::hypergraph::Hypergraph;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Parameters of the star system S_{d,m}: m vertex-disjoint stars covering
/// d vertices, each star being all r-sets of its class containing the class
/// center.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct StarSystemSpec {
    pub r: usize,
    pub d: usize,
    pub m: usize,
}

#[derive(Clone, Debug)]
pub struct StarSystem {
    pub hypergraph: Hypergraph,
    /// Contiguous vertex ranges `[start, end)` of the classes.
    pub classes: Vec<(usize, usize)>,
    /// Indices of classes too small to host any edge (size < r).
    pub empty_classes: Vec<usize>,
}

/// Canonical S_{d,m} on vertices 0..d-1: classes are contiguous ranges of
/// size ceil(d/m) (first d mod m of them) or floor(d/m); each center is the
/// least vertex of its class. Classes smaller than r yield no edges and are
/// flagged, not rejected.
pub fn star_system(spec: &StarSystemSpec) -> Result<StarSystem> {
    let StarSystemSpec { r, d, m } = *spec;
    if m < 1 || d < m {
        return Err(Error::InvalidParameter(format!(
            "star system needs d >= m >= 1, got d = {d}, m = {m}"
        )));
    }
    if r < 2 || d < r {
        return Err(Error::InvalidParameter(format!(
            "star system needs d >= r >= 2, got d = {d}, r = {r}"
        )));
    }
    let big = d % m;
    let size_big = d.div_ceil(m);
    let size_small = d / m;
    let mut classes = Vec::with_capacity(m);
    let mut start = 0;
    for i in 0..m {
        let size = if i < big { size_big } else { size_small };
        classes.push((start, start + size));
        start += size;
    }
    debug_assert_eq!(start, d);

    let mut edges = Vec::new();
    let mut empty_classes = Vec::new();
    for (i, &(lo, hi)) in classes.iter().enumerate() {
        if hi - lo < r {
            empty_classes.push(i);
            continue;
        }
        let center = lo;
        let rest: Vec<usize> = (lo + 1..hi).collect();
        for mut combo in combinations(&rest, r - 1) {
            combo.push(center);
            edges.push(combo);
        }
    }
    Ok(StarSystem {
        hypergraph: Hypergraph::new(r, d, edges)?,
        classes,
        empty_classes,
    })
}

/// All `k`-element subsets of `items`, in lexicographic order.
fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

/// Upper bound exp(-m(s - rm)/(2d)) on the probability that a uniform s-set
/// of S_{d,m} is independent, clamped at 1 for s <= rm.
pub fn indep_prob_bound_star(d: usize, m: usize, r: usize, s: usize) -> f64 {
    let e = -(m as f64) * (s as f64 - (r * m) as f64) / (2.0 * d as f64);
    e.exp().min(1.0)
}

/// Upper bound on the probability that a uniform s-set of the linear
/// short-cycle-free 3-graph on n vertices is independent: for s below
/// sqrt(n)/2 the bound is exp(-(s^3 - 216)/(80 n^(3/2))) clamped at 1,
/// otherwise the flat constant 639/640. Quantitatively meaningful only for
/// large n.
pub fn indep_prob_bound_jn(n: usize, s: usize) -> f64 {
    let nf = n as f64;
    let sf = s as f64;
    if sf < nf.sqrt() / 2.0 {
        let e = -(sf.powi(3) - 216.0) / (80.0 * nf.powf(1.5));
        e.exp().min(1.0)
    } else {
        639.0 / 640.0
    }
}

/// Default star multiplicity 8 log(n) / c^k, rounded up to at least 1.
/// At small n this typically exceeds the placement degrees and gets clamped
/// per placement; the trace records when that happens.
pub fn default_multiplicity(n: usize, c: f64, k: usize) -> usize {
    if n < 2 || c <= 0.0 {
        return 1;
    }
    let m = 8.0 * (n as f64).ln() / c.powi(k as i32);
    m.ceil().max(1.0) as usize
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BuildKind {
    Stars { k: usize, r: usize, m: usize },
    JnCover,
}

/// One per-source-vertex placement: the seeded bijection from the placed
/// structure's vertices onto the neighborhood.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub x: VertexId,
    pub degree: usize,
    /// Placed-structure vertex i lands on hypergraph vertex mapping[i].
    pub mapping: Vec<VertexId>,
    /// Star multiplicity after clamping; for supplier placements, the
    /// number of placed edges.
    pub m_used: usize,
    pub clamped: bool,
    pub skipped: bool,
}

/// Complete record of a randomized build: source graph, parts, per-x
/// placements and the resulting hypergraph. Rebuilding from the recorded
/// inputs and seed reproduces the hypergraph edge for edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub kind: BuildKind,
    pub seed: u64,
    pub source_n: usize,
    pub source_edges: Vec<(VertexId, VertexId)>,
    pub part_x: Vec<VertexId>,
    pub part_y: Vec<VertexId>,
    /// Hypergraph vertex -> source vertex.
    pub y_ids: Vec<VertexId>,
    pub placements: Vec<Placement>,
    pub edges: Vec<Vec<VertexId>>,
    /// Density constant carried over from the degree pipeline, when known.
    pub c: Option<f64>,
    pub flags: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub hypergraph: Hypergraph,
    pub trace: ConstructionTrace,
}

fn per_x_rng(seed: u64, x: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(x as u64 + 1);
    rng
}

fn check_girth_above(g: &Graph, need: usize) -> Result<Option<usize>> {
    let gr = girth(g);
    if let Some(girth) = gr.girth {
        if girth <= need {
            return Err(Error::GirthTooSmall {
                girth: Some(girth),
                need,
            });
        }
    }
    Ok(gr.girth)
}

/// Forms an r-graph on the Y side of `bip` by placing an independently
/// seeded uniform copy of S_{d(x),min(m,d(x))} on the neighborhood of each
/// x in X. Requires girth(gp) > 2k, which rules out any non-trivial Berge
/// cycle of length up to k in the result.
pub fn build_stars(
    gp: &Graph,
    bip: &Bipartition,
    k: usize,
    r: usize,
    m: usize,
    seed: u64,
    density_c: Option<f64>,
) -> Result<Construction> {
    if m < 1 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    if r < 2 {
        return Err(Error::InvalidParameter(format!("uniformity r = {r} < 2")));
    }
    bip.validate(gp)?;
    check_girth_above(gp, 2 * k)?;

    let mut y_index = vec![usize::MAX; gp.n()];
    for (i, &y) in bip.right.iter().enumerate() {
        y_index[y] = i;
    }

    let mut placements = Vec::new();
    let mut edges = std::collections::BTreeSet::new();
    let mut flags = Vec::new();
    for &x in &bip.left {
        let nbrs: Vec<usize> = gp.neighbors(x).to_vec();
        let d = nbrs.len();
        let mut rng = per_x_rng(seed, x);
        if d < r {
            placements.push(Placement {
                x,
                degree: d,
                mapping: Vec::new(),
                m_used: 0,
                clamped: false,
                skipped: true,
            });
            flags.push(format!("x={x}: degree {d} below r={r}, placement skipped"));
            continue;
        }
        let m_used = m.min(d);
        let clamped = m_used < m;
        if clamped {
            flags.push(format!("x={x}: m clamped from {m} to {m_used}"));
        }
        let star = star_system(&StarSystemSpec { r, d, m: m_used })?;
        let mut perm: Vec<usize> = (0..d).collect();
        perm.shuffle(&mut rng);
        let mapping: Vec<usize> = perm.iter().map(|&i| y_index[nbrs[i]]).collect();
        for e in star.hypergraph.edges() {
            let placed: Vec<usize> = e.iter().map(|&v| mapping[v]).collect();
            edges.insert({
                let mut p = placed;
                p.sort_unstable();
                p
            });
        }
        placements.push(Placement {
            x,
            degree: d,
            mapping,
            m_used,
            clamped,
            skipped: false,
        });
    }

    let hypergraph = Hypergraph::new(r, bip.right.len(), edges)?;
    let trace = ConstructionTrace {
        kind: BuildKind::Stars { k, r, m },
        seed,
        source_n: gp.n(),
        source_edges: gp.edges().to_vec(),
        part_x: bip.left.clone(),
        part_y: bip.right.clone(),
        y_ids: bip.right.clone(),
        placements,
        edges: hypergraph.edges().to_vec(),
        c: density_c,
        flags,
    };
    Ok(Construction { hypergraph, trace })
}

/// Re-runs a recorded build from its stored inputs and seed.
pub fn replay(trace: &ConstructionTrace) -> Result<Hypergraph> {
    let gp = Graph::new(trace.source_n, trace.source_edges.iter().copied())?;
    let bip = Bipartition {
        left: trace.part_x.clone(),
        right: trace.part_y.clone(),
    };
    let rebuilt = match trace.kind {
        BuildKind::Stars { k, r, m } => build_stars(&gp, &bip, k, r, m, trace.seed, trace.c)?,
        BuildKind::JnCover => build_jn_cover(&gp, &bip, trace.seed, trace.c)?,
    };
    Ok(rebuilt.hypergraph)
}

/// Report on one greedy linear-supplier run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JnReport {
    pub n: usize,
    pub edges: usize,
    /// Best-effort density target n^(3/2)/10 (informational only).
    pub target_edges: f64,
    pub degree_cap: usize,
    pub candidates_scanned: u64,
    /// True when every triple was considered; false when the candidate
    /// stream was capped for very large n.
    pub exhaustive: bool,
}

#[derive(Clone, Debug)]
pub struct JnBuild {
    pub hypergraph: Hypergraph,
    pub report: JnReport,
}

/// Incremental guard used by the greedy supplier. Maintains the shadow
/// graph (pairs covered by some triple) as per-vertex bitsets plus the
/// unique host triple of every covered pair, and decides whether a
/// candidate triple would create a Berge cycle of length 2, 3 or 4
/// (trivial cycles included) or violate the degree cap.
///
/// For linear 3-graphs a Berge cycle is exactly a shadow-graph cycle whose
/// pairs come from pairwise distinct triples, which reduces the check to
/// common-neighbor and 3-path queries against the shadow.
struct ShortCycleGuard {
    n: usize,
    words: usize,
    cap: usize,
    shadow: Vec<Vec<u64>>,
    host: std::collections::HashMap<(usize, usize), usize>,
    degree: Vec<usize>,
    edges: Vec<[usize; 3]>,
}

impl ShortCycleGuard {
    fn new(n: usize, cap: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            n,
            words,
            cap,
            shadow: vec![vec![0u64; words]; n],
            host: std::collections::HashMap::new(),
            degree: vec![0; n],
            edges: Vec::new(),
        }
    }

    fn host_of(&self, a: usize, b: usize) -> Option<usize> {
        self.host.get(&(a.min(b), a.max(b))).copied()
    }

    fn third(&self, edge: usize, a: usize, b: usize) -> usize {
        *self.edges[edge]
            .iter()
            .find(|&&v| v != a && v != b)
            .expect("triple has a third vertex")
    }

    /// Does the old shadow contain a path x-w-z-y whose three pairs have
    /// pairwise distinct hosts? Together with the new pair (x,y) that is a
    /// Berge 4-cycle.
    fn has_closing_3path(&self, x: usize, y: usize) -> bool {
        for wi in 0..self.words {
            let mut bits = self.shadow[x][wi];
            while bits != 0 {
                let w = wi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let h1 = self.host_of(x, w).expect("shadow pair has a host");
                let s = self.third(h1, x, w);
                for zi in 0..self.words {
                    let mut common = self.shadow[w][zi] & self.shadow[y][zi];
                    while common != 0 {
                        let z = zi * 64 + common.trailing_zeros() as usize;
                        common &= common - 1;
                        if z == s {
                            continue; // host(x,w) == host(w,z)
                        }
                        let h2 = self.host_of(w, z).expect("shadow pair has a host");
                        if self.third(h2, w, z) == y {
                            continue; // host(w,z) == host(z,y)
                        }
                        return true;
                    }
                }
            }
        }
        false
    }

    fn shadow_common_neighbor(&self, x: usize, y: usize) -> bool {
        (0..self.words).any(|i| self.shadow[x][i] & self.shadow[y][i] != 0)
    }

    /// Whether the triple can be added without creating a Berge 2-, 3- or
    /// 4-cycle or breaching the degree cap.
    fn admissible(&self, t: [usize; 3]) -> bool {
        let [a, b, c] = t;
        if self.degree[a] >= self.cap || self.degree[b] >= self.cap || self.degree[c] >= self.cap {
            return false;
        }
        let pairs = [(a, b), (a, c), (b, c)];
        // Linearity: a shared pair is a Berge 2-cycle.
        if pairs.iter().any(|&(x, y)| self.host_of(x, y).is_some()) {
            return false;
        }
        // A common shadow neighbor closes a Berge 3-cycle (hosts are
        // automatically distinct in a linear 3-graph).
        if pairs
            .iter()
            .any(|&(x, y)| self.shadow_common_neighbor(x, y))
        {
            return false;
        }
        if pairs.iter().any(|&(x, y)| self.has_closing_3path(x, y)) {
            return false;
        }
        true
    }

    fn insert(&mut self, t: [usize; 3]) {
        let idx = self.edges.len();
        self.edges.push(t);
        let [a, b, c] = t;
        for (x, y) in [(a, b), (a, c), (b, c)] {
            self.host.insert((x.min(y), x.max(y)), idx);
            self.shadow[x][y / 64] |= 1 << (y % 64);
            self.shadow[y][x / 64] |= 1 << (x % 64);
        }
        for v in t {
            self.degree[v] += 1;
        }
        debug_assert!(self.n >= 3);
    }
}

const JN_SCAN_CAP: u64 = 1 << 24;

fn binom3(n: u64) -> u64 {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

fn binom2(n: u64) -> u64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// Colex unranking of a 3-subset: rank = C(c,3) + C(b,2) + a with a < b < c.
fn unrank_triple(rank: u64, n: usize) -> [usize; 3] {
    let mut lo = 2u64;
    let mut hi = n as u64 - 1;
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if binom3(mid) <= rank {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let c = lo;
    let rest = rank - binom3(c);
    let mut lo2 = 1u64;
    let mut hi2 = c - 1;
    while lo2 < hi2 {
        let mid = (lo2 + hi2).div_ceil(2);
        if binom2(mid) <= rest {
            lo2 = mid;
        } else {
            hi2 = mid - 1;
        }
    }
    let b = lo2;
    let a = rest - binom2(b);
    [a as usize, b as usize, c as usize]
}

/// Greedy supplier of a linear 3-graph on n vertices that is exhaustively
/// free of Berge 2-, 3- and 4-cycles (trivial ones included), with maximum
/// degree at most ceil(sqrt(n)). Candidate triples are scanned in a seeded
/// uniform random order; density against the n^(3/2)/10 target is reported
/// but never guaranteed.
pub fn jn_supplier(n: usize, seed: u64) -> JnBuild {
    let cap = (n as f64).sqrt().ceil() as usize;
    let mut guard = ShortCycleGuard::new(n, cap.max(1));
    let total = binom3(n as u64);
    let exhaustive = total <= JN_SCAN_CAP;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut scanned = 0u64;

    if n >= 3 {
        if exhaustive {
            let mut ranks: Vec<u32> = (0..total as u32).collect();
            ranks.shuffle(&mut rng);
            for rank in ranks {
                scanned += 1;
                let t = unrank_triple(rank as u64, n);
                if guard.admissible(t) {
                    guard.insert(t);
                }
            }
        } else {
            // Too many triples to enumerate: sample the candidate stream.
            while scanned < JN_SCAN_CAP {
                scanned += 1;
                let t = unrank_triple(rng.random_range(0..total), n);
                if guard.admissible(t) {
                    guard.insert(t);
                }
            }
        }
    }

    let edges: Vec<Vec<usize>> = guard.edges.iter().map(|e| e.to_vec()).collect();
    let hypergraph = Hypergraph::new(3, n, edges).expect("greedy edges are valid");
    let report = JnReport {
        n,
        edges: hypergraph.edge_count(),
        target_edges: (n as f64).powf(1.5) / 10.0,
        degree_cap: cap,
        candidates_scanned: scanned,
        exhaustive,
    };
    JnBuild { hypergraph, report }
}

/// Forms a 3-graph on the Y side of `bip` by placing an independently
/// seeded copy of the greedy linear supplier's output on each neighborhood
/// N(x). Requires girth(gp) > 8, which rules out Berge 4-cycles in the
/// result.
pub fn build_jn_cover(
    gp: &Graph,
    bip: &Bipartition,
    seed: u64,
    density_c: Option<f64>,
) -> Result<Construction> {
    bip.validate(gp)?;
    check_girth_above(gp, 8)?;

    let mut y_index = vec![usize::MAX; gp.n()];
    for (i, &y) in bip.right.iter().enumerate() {
        y_index[y] = i;
    }

    let mut placements = Vec::new();
    let mut edges = std::collections::BTreeSet::new();
    let mut flags = Vec::new();
    for &x in &bip.left {
        let nbrs: Vec<usize> = gp.neighbors(x).to_vec();
        let d = nbrs.len();
        let mut rng = per_x_rng(seed, x);
        if d < 3 {
            placements.push(Placement {
                x,
                degree: d,
                mapping: Vec::new(),
                m_used: 0,
                clamped: false,
                skipped: true,
            });
            flags.push(format!("x={x}: degree {d} below 3, placement skipped"));
            continue;
        }
        let local_seed: u64 = rng.random();
        let local = jn_supplier(d, local_seed);
        let mut perm: Vec<usize> = (0..d).collect();
        perm.shuffle(&mut rng);
        let mapping: Vec<usize> = perm.iter().map(|&i| y_index[nbrs[i]]).collect();
        for e in local.hypergraph.edges() {
            let mut placed: Vec<usize> = e.iter().map(|&v| mapping[v]).collect();
            placed.sort_unstable();
            edges.insert(placed);
        }
        placements.push(Placement {
            x,
            degree: d,
            mapping,
            m_used: local.hypergraph.edge_count(),
            clamped: false,
            skipped: false,
        });
    }

    let hypergraph = Hypergraph::new(3, bip.right.len(), edges)?;
    let trace = ConstructionTrace {
        kind: BuildKind::JnCover,
        seed,
        source_n: gp.n(),
        source_edges: gp.edges().to_vec(),
        part_x: bip.left.clone(),
        part_y: bip.right.clone(),
        y_ids: bip.right.clone(),
        placements,
        edges: hypergraph.edges().to_vec(),
        c: density_c,
        flags,
    };
    Ok(Construction { hypergraph, trace })
}

/// Quick freeness check used by tests: no Berge cycle of any length in
/// `lengths` under the given mode.
pub fn detector_free(h: &Hypergraph, lengths: &[usize], mode: berge::Mode, budget: u64) -> bool {
    let fam = berge::ForbiddenFamily::new(h.r(), lengths.to_vec(), mode).expect("valid family");
    matches!(
        berge::is_free(h, &fam, budget),
        Ok(berge::FreenessOutcome::Free { .. })
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berge::Mode;
    use crate::girth::{deg_pipeline, incidence_gq};

    #[test]
    fn star_system_examples() {
        let s = star_system(&StarSystemSpec { r: 3, d: 6, m: 2 }).unwrap();
        assert_eq!(s.classes, vec![(0, 3), (3, 6)]);
        assert_eq!(s.hypergraph.edge_count(), 2);
        assert_eq!(s.hypergraph.edges()[0], vec![0, 1, 2]);
        assert_eq!(s.hypergraph.edges()[1], vec![3, 4, 5]);
        assert!(s.empty_classes.is_empty());

        let full = star_system(&StarSystemSpec { r: 3, d: 4, m: 1 }).unwrap();
        assert_eq!(full.hypergraph.edge_count(), 3);
        for e in full.hypergraph.edges() {
            assert!(e.contains(&0));
        }

        let tiny = star_system(&StarSystemSpec { r: 3, d: 3, m: 2 }).unwrap();
        assert_eq!(tiny.hypergraph.edge_count(), 0);
        assert_eq!(tiny.empty_classes, vec![0, 1]);

        assert!(star_system(&StarSystemSpec { r: 3, d: 2, m: 3 }).is_err());
    }

    #[test]
    fn star_bound_examples() {
        assert_eq!(indep_prob_bound_star(12, 3, 3, 9), 1.0);
        let b = indep_prob_bound_star(12, 2, 3, 8);
        assert!((b - (-1.0f64 / 6.0).exp()).abs() < 1e-12);
        assert_eq!(indep_prob_bound_star(12, 2, 3, 3), 1.0);
    }

    #[test]
    fn jn_bound_examples() {
        assert_eq!(indep_prob_bound_jn(10_000, 6), 1.0);
        assert_eq!(indep_prob_bound_jn(100, 50), 639.0 / 640.0);
        let b = indep_prob_bound_jn(10_000, 40);
        let expect = (-(40.0f64.powi(3) - 216.0) / (80.0 * 10_000f64.powf(1.5))).exp();
        assert!((b - expect).abs() < 1e-12);
        assert!(b < 1.0 && b > 0.99);
    }

    #[test]
    fn unrank_is_a_bijection() {
        let n = 9;
        let mut seen = std::collections::BTreeSet::new();
        for rank in 0..binom3(n as u64) {
            let [a, b, c] = unrank_triple(rank, n);
            assert!(a < b && b < c && c < n);
            assert!(seen.insert([a, b, c]));
        }
        assert_eq!(seen.len() as u64, binom3(n as u64));
    }

    #[test]
    fn jn_supplier_small() {
        for n in [7usize, 15, 20] {
            let jn = jn_supplier(n, 5);
            let h = &jn.hypergraph;
            // Linearity: every codegree at most 1.
            for u in 0..h.n() {
                for v in (u + 1)..h.n() {
                    assert!(h.codegree(u, v).unwrap() <= 1);
                }
            }
            assert!(h.max_degree() <= jn.report.degree_cap);
            assert!(detector_free(h, &[2, 3, 4], Mode::TrivialAllowed, 10_000_000));
        }
    }

    #[test]
    fn jn_guard_agrees_with_detector() {
        // Replay a greedy run at small n and cross-check every admissibility
        // decision against the exhaustive detector on the would-be result.
        let n = 12;
        let mut guard = ShortCycleGuard::new(n, usize::MAX);
        let mut accepted: Vec<Vec<usize>> = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut ranks: Vec<u32> = (0..binom3(n as u64) as u32).collect();
        ranks.shuffle(&mut rng);
        for rank in ranks {
            let t = unrank_triple(rank as u64, n);
            let mut cand = accepted.clone();
            cand.push(t.to_vec());
            let with = Hypergraph::new(3, n, cand).unwrap();
            let det_ok = detector_free(&with, &[2, 3, 4], Mode::TrivialAllowed, 10_000_000);
            assert_eq!(
                guard.admissible(t),
                det_ok,
                "guard and detector disagree on {t:?} after {} edges",
                accepted.len()
            );
            if det_ok {
                guard.insert(t);
                accepted.push(t.to_vec());
            }
        }
        assert!(!accepted.is_empty());
    }

    #[test]
    fn build_stars_from_gq2() {
        let g = incidence_gq(2).unwrap();
        let pipe = deg_pipeline(&g, 3, 1, 4).unwrap();
        let built = build_stars(&pipe.gprime, &pipe.bipartition, 3, 3, 1, 42, Some(pipe.report.c))
            .unwrap();
        let h = &built.hypergraph;
        assert_eq!(h.n(), 15);
        assert!(h.edge_count() > 0);
        assert!(detector_free(h, &[3], Mode::NontrivialOnly, 50_000_000));
        // Every hyperedge lies inside some placed neighborhood.
        for e in h.edges() {
            let found = built.trace.placements.iter().any(|p| {
                !p.skipped && e.iter().all(|v| p.mapping.contains(v))
            });
            assert!(found);
        }
    }

    #[test]
    fn build_stars_single_star() {
        // A star K_{1,5} is a forest, so any k passes the girth test.
        let g = Graph::new(6, (1..6).map(|v| (0, v))).unwrap();
        let bip = Bipartition {
            left: vec![0],
            right: (1..6).collect(),
        };
        let built = build_stars(&g, &bip, 3, 3, 1, 7, None).unwrap();
        assert_eq!(built.hypergraph.n(), 5);
        assert_eq!(built.hypergraph.edge_count(), 6); // C(4,2) triples through the center
        let again = build_stars(&g, &bip, 3, 3, 1, 7, None).unwrap();
        assert_eq!(built.hypergraph, again.hypergraph);
    }

    #[test]
    fn build_rejects_girth_violation() {
        let g = crate::fixtures::cycle_graph(6);
        let coloring = g.bipartite_coloring().unwrap();
        let bip = Bipartition {
            left: (0..6).filter(|&v| !coloring[v]).collect(),
            right: (0..6).filter(|&v| coloring[v]).collect(),
        };
        assert!(matches!(
            build_stars(&g, &bip, 3, 3, 1, 0, None),
            Err(Error::GirthTooSmall { .. })
        ));
    }

    #[test]
    fn trace_replays() {
        let g = incidence_gq(2).unwrap();
        let pipe = deg_pipeline(&g, 3, 3, 4).unwrap();
        let built =
            build_stars(&pipe.gprime, &pipe.bipartition, 3, 3, 2, 11, Some(pipe.report.c)).unwrap();
        let replayed = replay(&built.trace).unwrap();
        assert_eq!(replayed, built.hypergraph);
    }

    #[test]
    fn jn_cover_on_forest() {
        // Disjoint stars: the union is a disjoint union of supplier copies.
        let mut edges = Vec::new();
        for leaf in 1..6 {
            edges.push((0, leaf));
        }
        for leaf in 7..12 {
            edges.push((6, leaf));
        }
        let g = Graph::new(12, edges).unwrap();
        let bip = Bipartition {
            left: vec![0, 6],
            right: (1..6).chain(7..12).collect(),
        };
        let built = build_jn_cover(&g, &bip, 3, None).unwrap();
        assert_eq!(built.hypergraph.n(), 10);
        assert!(detector_free(
            &built.hypergraph,
            &[2, 3, 4],
            Mode::TrivialAllowed,
            10_000_000
        ));
        let replayed = replay(&built.trace).unwrap();
        assert_eq!(replayed, built.hypergraph);
    }

    #[test]
    fn default_multiplicity_floors_at_one() {
        assert_eq!(default_multiplicity(1, 0.5, 2), 1);
        assert!(default_multiplicity(1000, 0.2, 3) >= 1);
    }
}
