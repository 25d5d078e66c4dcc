//! Brute-force oracles, independent of the library's search paths.

use berge_ramsey::graph::Graph;
use berge_ramsey::hypergraph::Hypergraph;

/// Exhaustive Berge-cycle oracle: every ordered k-tuple of distinct edges,
/// with the SDR decided by trying all assignments.
pub fn oracle_berge_exists(h: &Hypergraph, k: usize, nontrivial: bool) -> bool {
    let m = h.edge_count();
    if m < k {
        return false;
    }
    let mut tuple = Vec::with_capacity(k);
    let mut used = vec![false; m];
    ordered_tuples(h, k, nontrivial, &mut tuple, &mut used)
}

fn ordered_tuples(
    h: &Hypergraph,
    k: usize,
    nontrivial: bool,
    tuple: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if tuple.len() == k {
        return tuple_is_berge(h, tuple, nontrivial);
    }
    for i in 0..h.edge_count() {
        if used[i] {
            continue;
        }
        used[i] = true;
        tuple.push(i);
        if ordered_tuples(h, k, nontrivial, tuple, used) {
            tuple.pop();
            used[i] = false;
            return true;
        }
        tuple.pop();
        used[i] = false;
    }
    false
}

fn tuple_is_berge(h: &Hypergraph, tuple: &[usize], nontrivial: bool) -> bool {
    let k = tuple.len();
    let sets: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            h.edge(tuple[i])
                .iter()
                .copied()
                .filter(|v| h.edge(tuple[(i + 1) % k]).contains(v))
                .collect()
        })
        .collect();
    if !sdr_exists_brute(&sets, &mut Vec::new()) {
        return false;
    }
    if nontrivial {
        let mut common: Vec<usize> = h.edge(tuple[0]).to_vec();
        for &i in &tuple[1..] {
            common.retain(|v| h.edge(i).contains(v));
        }
        if !common.is_empty() {
            return false;
        }
    }
    true
}

fn sdr_exists_brute(sets: &[Vec<usize>], chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == sets.len() {
        return true;
    }
    let idx = chosen.len();
    for &v in &sets[idx] {
        if !chosen.contains(&v) {
            chosen.push(v);
            if sdr_exists_brute(sets, chosen) {
                chosen.pop();
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Permutation brute force: ordered vertex sequences forming a cycle,
/// divided by the 2*len symmetries.
pub fn oracle_count_cycles(g: &Graph, len: usize) -> u64 {
    let mut seq = Vec::with_capacity(len);
    let mut used = vec![false; g.n()];
    let mut count = 0u64;
    fn rec(g: &Graph, len: usize, seq: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut u64) {
        if seq.len() == len {
            if g.has_edge(*seq.last().unwrap(), seq[0]) {
                *count += 1;
            }
            return;
        }
        for v in 0..g.n() {
            if used[v] {
                continue;
            }
            if let Some(&last) = seq.last() {
                if !g.has_edge(last, v) {
                    continue;
                }
            }
            used[v] = true;
            seq.push(v);
            rec(g, len, seq, used, count);
            seq.pop();
            used[v] = false;
        }
    }
    rec(g, len, &mut seq, &mut used, &mut count);
    count / (2 * len as u64)
}

/// Shortest cycle length by brute force over all lengths.
pub fn oracle_girth(g: &Graph) -> Option<usize> {
    (3..=g.n()).find(|&len| oracle_count_cycles(g, len) > 0)
}

/// Independence number by subset enumeration (n <= 20).
pub fn oracle_alpha(h: &Hypergraph) -> usize {
    let n = h.n();
    assert!(n <= 20);
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if set.len() > best && h.is_independent(&set) {
            best = set.len();
        }
    }
    best
}

/// Seeded corpus of small random graphs.
pub fn graph_corpus(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    (0..count)
        .map(|i| {
            let s = seed.wrapping_add(i as u64);
            let n = 4 + (s as usize % (max_n - 3));
            let max_m = n * (n - 1) / 2;
            let m = (s as usize * 7 + 3) % (max_m + 1);
            Graph::random_gnm(n, m, s)
        })
        .collect()
}

/// Seeded corpus of small random 3-graphs.
pub fn hypergraph_corpus(count: usize, max_n: usize, max_m: usize, seed: u64) -> Vec<Hypergraph> {
    (0..count)
        .map(|i| {
            let s = seed.wrapping_add(i as u64);
            let n = 4 + (s as usize % (max_n - 3));
            let m = (s as usize * 5 + 1) % (max_m + 1);
            Hypergraph::random(3, n, m, s)
        })
        .collect()
}
