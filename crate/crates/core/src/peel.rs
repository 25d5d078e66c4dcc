//! The upper-bound machinery for 3-graphs: probabilistic independent sets,
//! bounded degree-ratio extraction, light-pair peeling with codegree-1
//! subgraph selection, the random 3-coloring split, and the composed
//! two-case pipeline that either returns a verified independent set or
//! surfaces a Berge-cycle witness / apex diagnostic.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::berge::{self, BergeWitness, Mode, WitnessJson};
use crate::census;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::hypergraph::Hypergraph;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Constructive probabilistic independent set: sample vertices with
/// probability 1/sqrt(average degree), then delete one vertex from every
/// edge fully inside the sample. The result is always independent; its
/// expected size is at least 2 v(H) / (3 sqrt(d)).
pub fn random_indep_set(h: &Hypergraph, seed: u64) -> Result<Vec<VertexId>> {
    if h.r() != 3 {
        return Err(Error::NotThreeUniform { r: h.r() });
    }
    let n = h.n();
    if h.edge_count() == 0 {
        return Ok((0..n).collect());
    }
    let d = h.average_degree();
    let p = (1.0 / d.sqrt()).min(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = vec![false; n];
    for slot in chosen.iter_mut() {
        *slot = rng.random_bool(p);
    }
    let mut deleted = vec![false; n];
    for e in h.edges() {
        if e.iter().all(|&v| chosen[v]) {
            deleted[*e.iter().max().unwrap()] = true;
        }
    }
    let set: Vec<usize> = (0..n).filter(|&v| chosen[v] && !deleted[v]).collect();
    if !h.is_independent(&set) {
        return Err(Error::Invariant(
            "deletion left a contained edge".into(),
        ));
    }
    Ok(set)
}

/// Stage record of the bounded degree-ratio extraction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RatioReport {
    pub eps: f64,
    pub input_n: usize,
    pub input_edges: usize,
    pub stages: usize,
    pub out_n: usize,
    pub out_edges: usize,
    pub avg_degree: f64,
    pub max_degree: usize,
    pub vcount_floor: f64,
}

/// Induced subgraph with max degree at most avg degree / eps and at least
/// n^(1 - 2/log2(1/eps)) vertices: while the ratio is violated, repeatedly
/// delete vertices whose degree is at least the current stage's average.
/// Both conclusions are theorems and are asserted on the output.
pub fn bounded_ratio_subgraph(
    h: &Hypergraph,
    eps: f64,
) -> Result<(Hypergraph, Vec<VertexId>, RatioReport)> {
    if !(0.0 < eps && eps < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "eps must lie in (0, 1/2), got {eps}"
        )));
    }
    let n = h.n();
    let mut vertex_alive = vec![true; n];
    let mut edge_alive = vec![true; h.edge_count()];
    let mut degree: Vec<usize> = (0..n).map(|v| h.incident(v).len()).collect();
    let mut alive_vertices = n;
    let mut alive_edges = h.edge_count();
    let mut stages = 0;

    loop {
        let d = if alive_vertices == 0 {
            0.0
        } else {
            3.0 * alive_edges as f64 / alive_vertices as f64
        };
        let dmax = (0..n)
            .filter(|&v| vertex_alive[v])
            .map(|v| degree[v])
            .max()
            .unwrap_or(0);
        if (dmax as f64) <= d / eps {
            break;
        }
        stages += 1;
        let tau = d;
        // Degrees only drop during a stage, so one pass over the initial
        // candidates suffices.
        let mut stack: Vec<usize> = (0..n)
            .filter(|&v| vertex_alive[v] && degree[v] as f64 >= tau)
            .collect();
        while let Some(v) = stack.pop() {
            if !vertex_alive[v] || (degree[v] as f64) < tau {
                continue;
            }
            vertex_alive[v] = false;
            alive_vertices -= 1;
            for &ei in h.incident(v) {
                if edge_alive[ei] {
                    edge_alive[ei] = false;
                    alive_edges -= 1;
                    for &w in h.edge(ei) {
                        degree[w] -= 1;
                    }
                }
            }
        }
    }

    let survivors: Vec<usize> = (0..n).filter(|&v| vertex_alive[v]).collect();
    let (out, id_map) = h.induced(&survivors);
    let exponent = 1.0 - 2.0 / (1.0 / eps).log2();
    let vcount_floor = if n == 0 {
        0.0
    } else {
        (n as f64).powf(exponent)
    };
    let report = RatioReport {
        eps,
        input_n: n,
        input_edges: h.edge_count(),
        stages,
        out_n: out.n(),
        out_edges: out.edge_count(),
        avg_degree: out.average_degree(),
        max_degree: out.max_degree(),
        vcount_floor,
    };
    if (out.max_degree() as f64) > out.average_degree() / eps {
        return Err(Error::Invariant(format!(
            "degree ratio violated: max {} vs avg {} / eps {eps}",
            out.max_degree(),
            out.average_degree()
        )));
    }
    if (out.n() as f64) < vcount_floor {
        return Err(Error::Invariant(format!(
            "vertex floor violated: {} < {vcount_floor}",
            out.n()
        )));
    }
    Ok((out, id_map, report))
}

/// Trace of the light-pair peeling: the layer partition (indices into the
/// input edge list) and, for every layered edge, its recorded light pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LightPairTrace {
    pub k: usize,
    pub layers: Vec<Vec<usize>>,
    /// light_pairs[edge] = the lexicographically least pair of that edge
    /// whose codegree in the residual at layering time was below k.
    pub light_pairs: Vec<Option<(VertexId, VertexId)>>,
}

#[derive(Clone, Debug)]
pub enum PeelOutcome {
    /// The layers partition the whole edge set.
    Partition(LightPairTrace),
    /// The residual after k-1 rounds was nonempty; the returned tight path
    /// v1..v(k+2) converts into a Berge witness.
    TightPath(Vec<VertexId>),
}

fn pair_codegrees(h: &Hypergraph, alive: &[bool]) -> HashMap<(usize, usize), usize> {
    let mut cod: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, e) in h.edges().iter().enumerate() {
        if !alive[i] {
            continue;
        }
        for a in 0..3 {
            for b in (a + 1)..3 {
                *cod.entry((e[a], e[b])).or_insert(0) += 1;
            }
        }
    }
    cod
}

/// Peels the 3-graph into layers of edges that contain a light pair
/// (codegree below k in the current residual). If the residual after k-1
/// rounds is nonempty, extracts the greedy tight path guaranteed by the
/// heavy codegrees instead.
pub fn light_pair_peel(h: &Hypergraph, k: usize) -> Result<PeelOutcome> {
    if h.r() != 3 {
        return Err(Error::NotThreeUniform { r: h.r() });
    }
    if k < 3 {
        return Err(Error::InvalidParameter(format!("k = {k} < 3")));
    }
    let m = h.edge_count();
    let mut alive = vec![true; m];
    // level[e] = round in which e was layered; k means never (residual).
    let mut level = vec![k; m];
    let mut layers: Vec<Vec<usize>> = Vec::with_capacity(k - 1);
    let mut light_pairs: Vec<Option<(usize, usize)>> = vec![None; m];

    for round in 1..k {
        let cod = pair_codegrees(h, &alive);
        let mut layer = Vec::new();
        for (i, e) in h.edges().iter().enumerate() {
            if !alive[i] {
                continue;
            }
            let mut light: Option<(usize, usize)> = None;
            for a in 0..3 {
                for b in (a + 1)..3 {
                    let p = (e[a], e[b]);
                    if cod[&p] < k {
                        light = Some(p);
                        break;
                    }
                }
                if light.is_some() {
                    break;
                }
            }
            if let Some(p) = light {
                layer.push(i);
                light_pairs[i] = Some(p);
                level[i] = round;
            }
        }
        for &i in &layer {
            alive[i] = false;
        }
        layers.push(layer);
    }

    let residual: Vec<usize> = (0..m).filter(|&i| alive[i]).collect();
    if residual.is_empty() {
        return Ok(PeelOutcome::Partition(LightPairTrace {
            k,
            layers,
            light_pairs,
        }));
    }

    // Residual edges survived every round: each of their pairs was heavy in
    // the round's residual, which guarantees the greedy extension below.
    let mut pair_to_edges: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, e) in h.edges().iter().enumerate() {
        for a in 0..3 {
            for b in (a + 1)..3 {
                pair_to_edges.entry((e[a], e[b])).or_default().push(i);
            }
        }
    }

    let e1 = residual[0];
    let mut path: Vec<usize> = h.edge(e1).to_vec();
    for step in 1..k {
        // The next edge must lie in the residual of round k-step and extend
        // the last pair with a fresh vertex; take the least such vertex.
        let need_level = k - step;
        let pair = (path[step], path[step + 1]);
        let key = (pair.0.min(pair.1), pair.0.max(pair.1));
        let candidates = pair_to_edges.get(&key).cloned().unwrap_or_default();
        let mut next: Option<usize> = None;
        for &ei in &candidates {
            if level[ei] < need_level {
                continue;
            }
            let third = *h
                .edge(ei)
                .iter()
                .find(|&&v| v != key.0 && v != key.1)
                .expect("3-edge has a third vertex");
            if path.contains(&third) {
                continue;
            }
            if next.is_none_or(|best| {
                let bt = *h
                    .edge(best)
                    .iter()
                    .find(|&&v| v != key.0 && v != key.1)
                    .unwrap();
                third < bt
            }) {
                next = Some(ei);
            }
        }
        let Some(ei) = next else {
            return Err(Error::Invariant(format!(
                "heavy pair {key:?} offered no extension at step {step}"
            )));
        };
        let third = *h
            .edge(ei)
            .iter()
            .find(|&&v| v != key.0 && v != key.1)
            .unwrap();
        path.push(third);
    }
    debug_assert_eq!(path.len(), k + 2);
    Ok(PeelOutcome::TightPath(path))
}

/// Subgraph in which every edge owns a designated pair of codegree exactly
/// one, extracted from the largest peeling layer by a greedy independent
/// set in the light-pair conflict graph.
#[derive(Clone, Debug)]
pub struct HeavySubgraph {
    pub hypergraph: Hypergraph,
    /// Indices of the kept edges in the input hypergraph.
    pub edge_ids: Vec<usize>,
    /// Designated codegree-1 pair per kept edge (parallel to `edge_ids`).
    pub designated: Vec<(VertexId, VertexId)>,
    pub layer_index: usize,
    pub layer_size: usize,
    pub conflict_max_degree: usize,
    /// Recorded light pairs whose codegree check failed when recomputed in
    /// the layer; always empty (subset monotonicity), kept as evidence.
    pub discrepancies: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum HeavyOutcome {
    Heavy(HeavySubgraph),
    TightPath(Vec<VertexId>),
}

pub fn heavy_subgraph(h: &Hypergraph, k: usize) -> Result<HeavyOutcome> {
    let trace = match light_pair_peel(h, k)? {
        PeelOutcome::TightPath(p) => return Ok(HeavyOutcome::TightPath(p)),
        PeelOutcome::Partition(t) => t,
    };
    if h.edge_count() == 0 {
        return Ok(HeavyOutcome::Heavy(HeavySubgraph {
            hypergraph: Hypergraph::empty(3, h.n()),
            edge_ids: Vec::new(),
            designated: Vec::new(),
            layer_index: 0,
            layer_size: 0,
            conflict_max_degree: 0,
            discrepancies: Vec::new(),
        }));
    }

    let (layer_index, layer) = trace
        .layers
        .iter()
        .enumerate()
        .max_by_key(|(i, l)| (l.len(), std::cmp::Reverse(*i)))
        .map(|(i, l)| (i, l.clone()))
        .expect("at least one layer");
    if layer.len() * k <= h.edge_count() {
        return Err(Error::Invariant(format!(
            "pigeonhole failed: largest layer {} of {} edges",
            layer.len(),
            h.edge_count()
        )));
    }

    // Codegrees within the layer.
    let mut cod: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for &i in &layer {
        let e = h.edge(i);
        for a in 0..3 {
            for b in (a + 1)..3 {
                cod.entry((e[a], e[b])).or_default().push(i);
            }
        }
    }
    let mut discrepancies = Vec::new();
    for &i in &layer {
        let p = trace.light_pairs[i].expect("layered edge has a light pair");
        if cod[&p].len() >= k {
            discrepancies.push(i);
        }
    }
    if !discrepancies.is_empty() {
        return Err(Error::Invariant(format!(
            "recorded light pairs turned heavy within their layer: {discrepancies:?}"
        )));
    }

    // Conflict graph: layer edges sharing a pair that is light within the
    // layer. Each light pair contributes a clique.
    let mut adj: HashMap<usize, std::collections::BTreeSet<usize>> =
        layer.iter().map(|&i| (i, Default::default())).collect();
    for (_, hosts) in cod.iter().filter(|(_, hosts)| hosts.len() < k) {
        for a in 0..hosts.len() {
            for b in (a + 1)..hosts.len() {
                adj.get_mut(&hosts[a]).unwrap().insert(hosts[b]);
                adj.get_mut(&hosts[b]).unwrap().insert(hosts[a]);
            }
        }
    }
    let conflict_max_degree = adj.values().map(|s| s.len()).max().unwrap_or(0);
    if k >= 3 && conflict_max_degree > 3 * k - 6 {
        return Err(Error::Invariant(format!(
            "conflict graph degree {conflict_max_degree} exceeds 3k-6 = {}",
            3 * k - 6
        )));
    }

    // Greedy independent set in canonical edge order.
    let mut sorted_layer = layer.clone();
    sorted_layer.sort_unstable();
    let mut kept: Vec<usize> = Vec::new();
    let mut blocked: std::collections::HashSet<usize> = Default::default();
    for &i in &sorted_layer {
        if !blocked.contains(&i) {
            kept.push(i);
            for &j in &adj[&i] {
                blocked.insert(j);
            }
        }
    }

    if kept.len() * 3 * k * k <= h.edge_count() {
        return Err(Error::Invariant(format!(
            "selected subgraph too small: {} of {} edges (k = {k})",
            kept.len(),
            h.edge_count()
        )));
    }

    let hypergraph = h.restrict_edges(&kept);
    // Designated pairs must have codegree exactly 1 in the kept subgraph.
    let kept_cod = pair_codegrees(&hypergraph, &vec![true; hypergraph.edge_count()]);
    let mut designated = Vec::with_capacity(kept.len());
    for (pos, &i) in kept.iter().enumerate() {
        let p = trace.light_pairs[i].expect("layered edge has a light pair");
        debug_assert_eq!(hypergraph.edge(pos), h.edge(i));
        if kept_cod[&p] != 1 {
            return Err(Error::Invariant(format!(
                "designated pair {p:?} has codegree {} in the selection",
                kept_cod[&p]
            )));
        }
        designated.push(p);
    }

    Ok(HeavyOutcome::Heavy(HeavySubgraph {
        hypergraph,
        edge_ids: kept,
        designated,
        layer_index,
        layer_size: layer.len(),
        conflict_max_degree,
        discrepancies,
    }))
}

/// Best random 3-coloring out of `tries`: the selected edges (H2) are the
/// rainbow edges whose pair of colors {1,2} has codegree 1, and the graph
/// collects exactly those pairs, one per selected edge.
#[derive(Clone, Debug)]
pub struct ColorSplit {
    pub graph: Graph,
    /// Colors 0, 1, 2 per vertex.
    pub coloring: Vec<u8>,
    /// Indices (into the input) of the selected edges.
    pub h2: Vec<usize>,
    /// Pair of colors {0,1} per selected edge.
    pub pairs: Vec<(VertexId, VertexId)>,
    /// Color-2 vertex per selected edge.
    pub apex: Vec<VertexId>,
    pub achieved_ratio: f64,
    /// Whether |H2| >= |H1| / 27 was achieved; only the expectation is
    /// guaranteed, so the best try may fall short.
    pub target_met: bool,
    pub tries: usize,
}

pub fn color_split(h1: &Hypergraph, seed: u64, tries: usize) -> Result<ColorSplit> {
    if h1.r() != 3 {
        return Err(Error::NotThreeUniform { r: h1.r() });
    }
    let cod = pair_codegrees(h1, &vec![true; h1.edge_count()]);
    for e in h1.edges() {
        let has_unit = (0..3).any(|a| {
            ((a + 1)..3).any(|b| cod[&(e[a], e[b])] == 1)
        });
        if !has_unit {
            return Err(Error::InvalidParameter(format!(
                "edge {e:?} has no codegree-1 pair"
            )));
        }
    }

    let n = h1.n();
    let score = |coloring: &[u8]| -> usize {
        h1.edges()
            .iter()
            .filter(|e| qualifies(e, coloring, &cod))
            .count()
    };

    let mut best_coloring: Vec<u8> = vec![0; n];
    let mut best_score: Option<usize> = None;
    for t in 0..tries.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t as u64 + 1);
        let coloring: Vec<u8> = (0..n).map(|_| rng.random_range(0..3u8)).collect();
        let s = score(&coloring);
        if best_score.is_none_or(|b| s > b) {
            best_score = Some(s);
            best_coloring = coloring;
        }
    }

    let mut h2 = Vec::new();
    let mut pairs = Vec::new();
    let mut apex = Vec::new();
    for (i, e) in h1.edges().iter().enumerate() {
        if let Some((pair, z)) = qualifying_pair(e, &best_coloring, &cod) {
            h2.push(i);
            pairs.push(pair);
            apex.push(z);
        }
    }
    let mut uniq = pairs.clone();
    uniq.sort_unstable();
    uniq.dedup();
    if uniq.len() != pairs.len() {
        return Err(Error::Invariant(
            "codegree-1 pairs repeated across selected edges".into(),
        ));
    }
    let graph = Graph::new(n, pairs.iter().copied())?;
    let achieved_ratio = if h1.edge_count() == 0 {
        1.0
    } else {
        h2.len() as f64 / h1.edge_count() as f64
    };
    Ok(ColorSplit {
        graph,
        coloring: best_coloring,
        target_met: 27 * h2.len() >= h1.edge_count(),
        h2,
        pairs,
        apex,
        achieved_ratio,
        tries: tries.max(1),
    })
}

fn qualifies(e: &[usize], coloring: &[u8], cod: &HashMap<(usize, usize), usize>) -> bool {
    qualifying_pair(e, coloring, cod).is_some()
}

/// For a rainbow edge, the pair colored {0,1} and the color-2 vertex,
/// provided the pair has codegree 1.
fn qualifying_pair(
    e: &[usize],
    coloring: &[u8],
    cod: &HashMap<(usize, usize), usize>,
) -> Option<((usize, usize), usize)> {
    let mut by_color = [usize::MAX; 3];
    for &v in e {
        let c = coloring[v] as usize;
        if by_color[c] != usize::MAX {
            return None; // repeated color
        }
        by_color[c] = v;
    }
    let (a, b, z) = (by_color[0], by_color[1], by_color[2]);
    let pair = (a.min(b), a.max(b));
    (cod[&pair] == 1).then_some((pair, z))
}

/// What the Case-1 analysis found at the edge with the most 2k-cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Case1Finding {
    NoCycles,
    /// Some cycle's edges carry at least two distinct apex vertices; the
    /// corresponding triples form a non-trivial Berge cycle.
    DistinctApexes {
        cycle: Vec<VertexId>,
        apexes: Vec<VertexId>,
    },
    /// Every cycle through the pivot edge has the same apex everywhere.
    ConstantApex { z: VertexId, union_edges: usize },
}

#[derive(Clone, Debug)]
pub struct Case1Analysis {
    pub edge: Option<(VertexId, VertexId)>,
    pub cycles_through: u64,
    pub finding: Case1Finding,
}

/// Pigeonhole edge selection plus apex gathering: picks the edge of `g`
/// lying on the most `len`-cycles (ties to the canonically first edge),
/// walks every cycle through it, and reads off the apex of each cycle edge.
pub fn case1_analysis(
    g: &Graph,
    apex_of: &HashMap<(VertexId, VertexId), VertexId>,
    len: usize,
    budget: u64,
) -> Result<Case1Analysis> {
    let c = census::census(g, len, budget)?;
    if c.total == 0 {
        return Ok(Case1Analysis {
            edge: None,
            cycles_through: 0,
            finding: Case1Finding::NoCycles,
        });
    }
    let best = (0..g.edge_count())
        .max_by_key(|&i| (c.per_edge[i], std::cmp::Reverse(i)))
        .expect("graph with cycles has edges");
    let e = g.edges()[best];

    let mut distinct: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut union: std::collections::BTreeSet<(usize, usize)> = Default::default();
    let mut m = 0u64;
    let mut missing: Option<(usize, usize)> = None;
    census::for_each_cycle_through_edge(g, e, len, budget, &mut |cycle| {
        m += 1;
        let mut apexes = Vec::with_capacity(len);
        for i in 0..cycle.len() {
            let a = cycle[i];
            let b = cycle[(i + 1) % cycle.len()];
            let key = (a.min(b), a.max(b));
            union.insert(key);
            match apex_of.get(&key) {
                Some(&z) => apexes.push(z),
                None => missing = Some(key),
            }
        }
        if distinct.is_none() && apexes.windows(2).any(|w| w[0] != w[1]) {
            distinct = Some((cycle.to_vec(), apexes));
        }
    })?;
    if let Some(pair) = missing {
        return Err(Error::Invariant(format!(
            "graph edge {pair:?} has no apex triple"
        )));
    }
    let finding = match distinct {
        Some((cycle, apexes)) => Case1Finding::DistinctApexes { cycle, apexes },
        None => Case1Finding::ConstantApex {
            z: apex_of[&e],
            union_edges: union.len(),
        },
    };
    Ok(Case1Analysis {
        edge: Some(e),
        cycles_through: m,
        finding,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub seed: u64,
    /// Override for the ratio parameter; default exp(-sqrt(log2 n)),
    /// falling back to 1/4 when that is not below 1/2.
    pub eps: Option<f64>,
    pub color_tries: usize,
    pub indep_tries: usize,
    pub census_budget: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            eps: None,
            color_tries: 64,
            indep_tries: 32,
            census_budget: census::DEFAULT_CENSUS_BUDGET,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ApexDiagnostic {
    /// Common apex of all cycles through the pivot edge (original ids),
    /// absent when no cycle exists.
    pub z: Option<VertexId>,
    pub pivot_edge: Option<(VertexId, VertexId)>,
    pub cycles_through: u64,
    pub union_edges: usize,
    pub dmax0: usize,
    /// Whether |G'| > D0, the asymptotic contradiction; may fail at small
    /// scale even on cycle-free inputs.
    pub exceeds_dmax: bool,
}

/// Everything the pipeline measured, for reports and sweeps.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PeelReport {
    pub k: usize,
    pub n: usize,
    pub edges: usize,
    pub eps: f64,
    pub eps_fallback: bool,
    pub ratio_stages: usize,
    pub n0: usize,
    pub d0: f64,
    pub dmax0: usize,
    pub h0_edges: usize,
    pub h1_edges: Option<usize>,
    /// The composed accounting |H1| >= |H0| / (4k^2); reported only, since
    /// the per-stage guarantee is the weaker 1/(3(2k)^2).
    pub pipeline_ratio_ok: Option<bool>,
    pub h2_edges: Option<usize>,
    pub color_ratio: Option<f64>,
    pub color_target_met: Option<bool>,
    pub b: Option<f64>,
    pub case: Option<u8>,
    pub outcome: String,
    pub witness: Option<WitnessJson>,
    pub apex_diagnostic: Option<ApexDiagnostic>,
    pub indep_size: usize,
    /// 2 n0 / (3 sqrt(d0)) when Case 2 ran with d0 >= 1.
    pub alphabound_floor: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct PipelineOutcome {
    /// Always an independent set of the input hypergraph, whichever case
    /// ran (in original vertex ids).
    pub independent_set: Vec<VertexId>,
    pub report: PeelReport,
}

/// The composed two-case pipeline targeting Berge cycles of length 2k.
pub fn pipeline(h: &Hypergraph, k: usize, cfg: &PipelineConfig) -> Result<PipelineOutcome> {
    if h.r() != 3 {
        return Err(Error::NotThreeUniform { r: h.r() });
    }
    if k < 3 {
        return Err(Error::InvalidParameter(format!("k = {k} < 3")));
    }
    let n = h.n();
    let (eps, eps_fallback) = match cfg.eps {
        Some(e) => {
            if !(0.0 < e && e < 0.5) {
                return Err(Error::InvalidParameter(format!(
                    "eps must lie in (0, 1/2), got {e}"
                )));
            }
            (e, false)
        }
        None => {
            let e = if n >= 2 {
                (-(n as f64).log2().sqrt()).exp()
            } else {
                1.0
            };
            if e < 0.5 {
                (e, false)
            } else {
                (0.25, true)
            }
        }
    };

    let (h0, idmap0, ratio_report) = bounded_ratio_subgraph(h, eps)?;
    let n0 = h0.n();
    let d0 = h0.average_degree();
    let dmax0 = h0.max_degree();

    // Independent set: best of several probabilistic draws on H0, mapped
    // back to original ids. Independence in H0 lifts to H because H0 is an
    // induced subgraph.
    let mut indep: Vec<usize> = Vec::new();
    for t in 0..cfg.indep_tries.max(1) {
        let set = random_indep_set(&h0, cfg.seed.wrapping_add(t as u64))?;
        if set.len() > indep.len() {
            indep = set;
        }
    }
    let independent_set: Vec<usize> = indep.iter().map(|&v| idmap0[v]).collect();
    if !h.is_independent(&independent_set) {
        return Err(Error::Invariant(
            "pipeline produced a dependent vertex set".into(),
        ));
    }

    let mut report = PeelReport {
        k,
        n,
        edges: h.edge_count(),
        eps,
        eps_fallback,
        ratio_stages: ratio_report.stages,
        n0,
        d0,
        dmax0,
        h0_edges: h0.edge_count(),
        h1_edges: None,
        pipeline_ratio_ok: None,
        h2_edges: None,
        color_ratio: None,
        color_target_met: None,
        b: None,
        case: None,
        outcome: String::new(),
        witness: None,
        apex_diagnostic: None,
        indep_size: independent_set.len(),
        alphabound_floor: None,
    };

    let hs = match heavy_subgraph(&h0, 2 * k)? {
        HeavyOutcome::TightPath(path) => {
            // The input was not free of length-2k Berge cycles: convert and
            // rebind the explicit witness.
            let w0 = berge::tight_path_to_witness(&path, &h0, 2 * k)?;
            let w = berge::rebind_witness(&w0, &h0, h, &idmap0)?;
            if !berge::verify_witness(h, &w, Mode::NontrivialOnly)? {
                return Err(Error::Invariant(
                    "tight-path witness failed verification on the input".into(),
                ));
            }
            report.outcome = "witness".into();
            report.witness = Some(w.to_json(h, Mode::NontrivialOnly));
            return Ok(PipelineOutcome {
                independent_set,
                report,
            });
        }
        HeavyOutcome::Heavy(hs) => hs,
    };

    report.h1_edges = Some(hs.hypergraph.edge_count());
    report.pipeline_ratio_ok =
        Some(hs.hypergraph.edge_count() * 4 * k * k >= h0.edge_count());

    let cs = color_split(&hs.hypergraph, cfg.seed, cfg.color_tries)?;
    report.h2_edges = Some(cs.h2.len());
    report.color_ratio = Some(cs.achieved_ratio);
    report.color_target_met = Some(cs.target_met);

    let b = if n0 == 0 {
        0.0
    } else {
        cs.graph.edge_count() as f64 / (n0 as f64).powf(1.0 + 1.0 / k as f64)
    };
    report.b = Some(b);

    if b >= 1.0 / eps {
        report.case = Some(1);
        let apex_of: HashMap<(usize, usize), usize> = cs
            .pairs
            .iter()
            .copied()
            .zip(cs.apex.iter().copied())
            .collect();
        match case1_analysis(&cs.graph, &apex_of, 2 * k, cfg.census_budget) {
            Err(Error::BudgetExhausted { .. }) => {
                report.outcome = "census-budget-exhausted".into();
            }
            Err(e) => return Err(e),
            Ok(analysis) => match analysis.finding {
                Case1Finding::NoCycles => {
                    report.outcome = "apex-diagnostic".into();
                    report.apex_diagnostic = Some(ApexDiagnostic {
                        z: None,
                        pivot_edge: None,
                        cycles_through: 0,
                        union_edges: 0,
                        dmax0,
                        exceeds_dmax: false,
                    });
                }
                Case1Finding::DistinctApexes { cycle, apexes } => {
                    // Build the Berge witness from the cycle's triples.
                    let len = cycle.len();
                    let mut edge_ids = Vec::with_capacity(len);
                    for i in 0..len {
                        let a = cycle[i];
                        let bv = cycle[(i + 1) % len];
                        let triple = vec![a, bv, apexes[i]];
                        let idx = h0
                            .find_edge(&triple)
                            .ok_or(Error::MissingEdge { edge: triple })?;
                        edge_ids.push(idx);
                    }
                    let mut sdr: Vec<usize> = cycle[1..].to_vec();
                    sdr.push(cycle[0]);
                    let w0 = BergeWitness::assemble(&h0, edge_ids, sdr);
                    let w = berge::rebind_witness(&w0, &h0, h, &idmap0)?;
                    if !berge::verify_witness(h, &w, Mode::NontrivialOnly)? {
                        return Err(Error::Invariant(
                            "apex witness failed verification on the input".into(),
                        ));
                    }
                    report.outcome = "witness".into();
                    report.witness = Some(w.to_json(h, Mode::NontrivialOnly));
                }
                Case1Finding::ConstantApex { z, union_edges } => {
                    report.outcome = "apex-diagnostic".into();
                    report.apex_diagnostic = Some(ApexDiagnostic {
                        z: Some(idmap0[z]),
                        pivot_edge: analysis.edge.map(|(a, b)| (idmap0[a], idmap0[b])),
                        cycles_through: analysis.cycles_through,
                        union_edges,
                        dmax0,
                        exceeds_dmax: union_edges > dmax0,
                    });
                }
            },
        }
    } else {
        report.case = Some(2);
        report.outcome = "independent-set".into();
        if d0 >= 1.0 {
            report.alphabound_floor = Some(2.0 * n0 as f64 / (3.0 * d0.sqrt()));
        }
    }

    Ok(PipelineOutcome {
        independent_set,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn random_indep_set_edgeless() {
        let h = Hypergraph::empty(3, 5);
        assert_eq!(random_indep_set(&h, 0).unwrap(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn random_indep_set_always_independent() {
        for seed in 0..50 {
            let h = Hypergraph::random(3, 10, 12, seed);
            let set = random_indep_set(&h, seed).unwrap();
            assert!(h.is_independent(&set));
        }
    }

    #[test]
    fn random_indep_set_mean_on_ag23() {
        // Average degree 4, so the expectation floor is 2*9/(3*2) = 3.
        let h = fixtures::ag23();
        let trials = 10_000u64;
        let total: usize = (0..trials)
            .map(|s| random_indep_set(&h, s).unwrap().len())
            .sum();
        let mean = total as f64 / trials as f64;
        assert!(mean >= 2.9, "mean {mean} too far below the floor 3");
    }

    #[test]
    fn bounded_ratio_keeps_compliant_input() {
        let h = fixtures::ag23(); // 4-regular: dmax = avg
        let (out, map, rep) = bounded_ratio_subgraph(&h, 0.25).unwrap();
        assert_eq!(out.n(), 9);
        assert_eq!(map, (0..9).collect::<Vec<_>>());
        assert_eq!(rep.stages, 0);
    }

    #[test]
    fn bounded_ratio_deletes_hub() {
        // One hub vertex inside every edge, pendant triples otherwise.
        let mut edges = Vec::new();
        for i in 0..12 {
            edges.push(vec![0, 2 * i + 1, 2 * i + 2]);
        }
        let h = Hypergraph::new(3, 25, edges).unwrap();
        let (out, map, _) = bounded_ratio_subgraph(&h, 0.25).unwrap();
        assert!(!map.contains(&0), "hub must be deleted");
        assert_eq!(out.edge_count(), 0);
    }

    #[test]
    fn bounded_ratio_contract_on_random_corpus() {
        for seed in 0..60 {
            let n = 6 + (seed as usize % 10);
            let m = 4 + (seed as usize % 14);
            let h = Hypergraph::random(3, n, m, seed);
            for eps in [0.25, 0.125, 0.0625] {
                let (out, _, rep) = bounded_ratio_subgraph(&h, eps).unwrap();
                assert!((out.max_degree() as f64) <= out.average_degree() / eps);
                assert!(out.n() as f64 >= rep.vcount_floor);
            }
        }
    }

    #[test]
    fn light_pair_peel_linear_is_one_layer() {
        let h = fixtures::ag23();
        let PeelOutcome::Partition(trace) = light_pair_peel(&h, 4).unwrap() else {
            panic!("linear input cannot contain heavy pairs")
        };
        assert_eq!(trace.layers[0].len(), 12);
        assert!(trace.layers[1..].iter().all(|l| l.is_empty()));
        for i in 0..12 {
            assert!(trace.light_pairs[i].is_some());
        }
    }

    #[test]
    fn light_pair_layers_partition_and_are_light() {
        for seed in 0..20 {
            let h = Hypergraph::random(3, 9, 14, seed);
            let k = 3;
            let out = light_pair_peel(&h, k).unwrap();
            let PeelOutcome::Partition(trace) = out else {
                continue;
            };
            let mut seen = vec![false; h.edge_count()];
            let mut alive = vec![true; h.edge_count()];
            for layer in &trace.layers {
                // Each recorded pair is light in the residual at its layer.
                let cod = pair_codegrees(&h, &alive);
                for &i in layer {
                    assert!(!seen[i]);
                    seen[i] = true;
                    let p = trace.light_pairs[i].unwrap();
                    assert!(cod[&p] < k, "pair {p:?} not light in its residual");
                }
                for &i in layer {
                    alive[i] = false;
                }
            }
            assert!(seen.iter().all(|&s| s), "layers must partition the edges");
        }
    }

    #[test]
    fn tight_path_from_dense_block() {
        // In a complete 3-graph on k+3 vertices every pair has codegree
        // k+1 >= k, so no edge is ever light and the residual survives.
        for k in [4usize, 5] {
            let h = fixtures::complete_3graph(k + 3);
            let PeelOutcome::TightPath(path) = light_pair_peel(&h, k).unwrap() else {
                panic!("dense block must surface a tight path")
            };
            assert_eq!(path.len(), k + 2);
            for w in path.windows(3) {
                assert!(h.find_edge(&[w[0], w[1], w[2]]).is_some());
            }
            let witness = berge::tight_path_to_witness(&path, &h, k).unwrap();
            assert!(berge::verify_witness(&h, &witness, Mode::NontrivialOnly).unwrap());
        }
    }

    #[test]
    fn heavy_subgraph_on_linear_keeps_everything() {
        let h = fixtures::ag23();
        let HeavyOutcome::Heavy(hs) = heavy_subgraph(&h, 4).unwrap() else {
            panic!("linear input has no tight path")
        };
        assert_eq!(hs.hypergraph.edge_count(), 12);
        assert_eq!(hs.conflict_max_degree, 0);
        assert!(hs.discrepancies.is_empty());
    }

    #[test]
    fn heavy_subgraph_contract_random() {
        for seed in 0..20 {
            let h = Hypergraph::random(3, 10, 16, seed);
            let k = 4;
            match heavy_subgraph(&h, k).unwrap() {
                HeavyOutcome::TightPath(path) => {
                    let w = berge::tight_path_to_witness(&path, &h, k).unwrap();
                    assert!(berge::verify_witness(&h, &w, Mode::NontrivialOnly).unwrap());
                }
                HeavyOutcome::Heavy(hs) => {
                    assert!(hs.hypergraph.edge_count() * 3 * k * k > h.edge_count());
                    assert!(hs.conflict_max_degree <= 3 * k - 6);
                    let cod = pair_codegrees(
                        &hs.hypergraph,
                        &vec![true; hs.hypergraph.edge_count()],
                    );
                    for (pos, p) in hs.designated.iter().enumerate() {
                        assert_eq!(cod[p], 1);
                        let e = hs.hypergraph.edge(pos);
                        assert!(e.contains(&p.0) && e.contains(&p.1));
                    }
                }
            }
        }
    }

    #[test]
    fn color_split_single_edge() {
        let h = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let cs = color_split(&h, 1, 64).unwrap();
        // Best-of-64 hits the 2/9 rainbow-with-order event essentially
        // always; the single edge is then selected.
        assert_eq!(cs.h2.len(), 1);
        assert_eq!(cs.graph.edge_count(), 1);
        assert!(cs.target_met);
        let again = color_split(&h, 1, 64).unwrap();
        assert_eq!(cs.coloring, again.coloring);
    }

    #[test]
    fn color_split_rejects_heavy_edges() {
        // Codegree-2 pairs everywhere: no designated pair exists.
        let h = Hypergraph::new(
            3,
            5,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap();
        assert!(color_split(&h, 0, 8).is_err());
    }

    #[test]
    fn color_split_graph_matches_h2() {
        let h = fixtures::ag23();
        let cs = color_split(&h, 5, 64).unwrap();
        assert_eq!(cs.graph.edge_count(), cs.h2.len());
        for (i, &eid) in cs.h2.iter().enumerate() {
            let e = h.edge(eid);
            let (a, b) = cs.pairs[i];
            let z = cs.apex[i];
            assert!(e.contains(&a) && e.contains(&b) && e.contains(&z));
            assert_eq!(cs.coloring[z], 2);
            assert_ne!(cs.coloring[a], cs.coloring[b]);
        }
    }

    fn biclique_apex_fixture(s: usize) -> (Graph, HashMap<(usize, usize), usize>) {
        // K_{s,s} between {0..s} and {s..2s}, every pair's apex is 2s.
        let mut edges = Vec::new();
        let mut apex = HashMap::new();
        for a in 0..s {
            for b in s..2 * s {
                edges.push((a, b));
                apex.insert((a, b), 2 * s);
            }
        }
        (Graph::new(2 * s + 1, edges).unwrap(), apex)
    }

    #[test]
    fn case1_constant_apex() {
        let (g, apex) = biclique_apex_fixture(4);
        let analysis = case1_analysis(&g, &apex, 6, 10_000_000).unwrap();
        assert!(analysis.cycles_through > 0);
        let Case1Finding::ConstantApex { z, union_edges } = analysis.finding else {
            panic!("constant apex expected")
        };
        assert_eq!(z, 8);
        assert_eq!(union_edges, 16); // every K_{4,4} edge lies on a hexagon through e
    }

    #[test]
    fn case1_distinct_apexes() {
        // Skew one pair's apex: cycles through it see two distinct apexes.
        let (base, _) = biclique_apex_fixture(4);
        let mut apex = HashMap::new();
        for a in 0..4 {
            for b in 4..8 {
                apex.insert((a, b), if (a, b) == (0, 4) { 9 } else { 8 });
            }
        }
        let g = Graph::new(10, base.edges().iter().copied()).unwrap();
        let analysis = case1_analysis(&g, &apex, 6, 10_000_000).unwrap();
        match analysis.finding {
            Case1Finding::DistinctApexes { cycle, apexes } => {
                assert_eq!(cycle.len(), 6);
                assert_eq!(apexes.len(), 6);
                assert!(apexes.windows(2).any(|w| w[0] != w[1]));
            }
            other => panic!("expected distinct apexes, got {other:?}"),
        }
    }

    #[test]
    fn case1_budget_exhaustion_is_an_error() {
        let (g, apex) = biclique_apex_fixture(6);
        assert!(matches!(
            case1_analysis(&g, &apex, 6, 10),
            Err(crate::error::Error::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn pipeline_edgeless_returns_everything() {
        let h = Hypergraph::empty(3, 8);
        let out = pipeline(&h, 3, &PipelineConfig::default()).unwrap();
        assert_eq!(out.independent_set.len(), 8);
        assert_eq!(out.report.case, Some(2));
        assert_eq!(out.report.outcome, "independent-set");
    }

    #[test]
    fn pipeline_sound_on_random_corpus() {
        for seed in 0..15 {
            let h = Hypergraph::random(3, 12, 20, seed);
            let out = pipeline(&h, 3, &PipelineConfig { seed, ..Default::default() }).unwrap();
            assert!(h.is_independent(&out.independent_set), "seed {seed}");
            assert!(!out.report.outcome.is_empty());
        }
    }

    #[test]
    fn pipeline_dense_block_surfaces_witness() {
        // A complete 3-graph on 9 vertices contains Berge 6-cycles; the
        // peel's tight path converts into a verified witness.
        let h = fixtures::complete_3graph(9);
        let out = pipeline(&h, 3, &PipelineConfig::default()).unwrap();
        assert_eq!(out.report.outcome, "witness");
        assert!(h.is_independent(&out.independent_set));
        let wj = out.report.witness.unwrap();
        assert_eq!(wj.k, 6);
        let w = BergeWitness::from_json(&wj, &h).unwrap();
        assert!(berge::verify_witness(&h, &w, Mode::NontrivialOnly).unwrap());
    }
}
