//! Small named structures used in tests, docs and experiments.

use crate::graph::Graph;
use crate::hypergraph::Hypergraph;

/// The Fano plane as a 3-graph: 7 points, 7 lines, every pair of points on
/// exactly one line.
pub fn fano_plane() -> Hypergraph {
    Hypergraph::new(
        3,
        7,
        vec![
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 5, 6],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
        ],
    )
    .unwrap()
}

/// The affine plane AG(2,3) as a 3-graph: 9 points, 12 lines, 4-regular.
/// Point (x, y) gets id 3x + y.
pub fn ag23() -> Hypergraph {
    let id = |x: usize, y: usize| 3 * x + y;
    let mut lines = Vec::new();
    for &(dx, dy) in &[(0, 1), (1, 0), (1, 1), (1, 2)] {
        for x0 in 0..3 {
            for y0 in 0..3 {
                let mut line: Vec<usize> = (0..3)
                    .map(|t| id((x0 + t * dx) % 3, (y0 + t * dy) % 3))
                    .collect();
                line.sort_unstable();
                if !lines.contains(&line) {
                    lines.push(line);
                }
            }
        }
    }
    assert_eq!(lines.len(), 12);
    Hypergraph::new(3, 9, lines).unwrap()
}

/// Loose triangle: three triples meeting consecutively in single vertices.
pub fn loose_triangle() -> Hypergraph {
    Hypergraph::new(3, 6, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 0]]).unwrap()
}

/// Sunflower with three petals and a common core vertex 6.
pub fn sunflower() -> Hypergraph {
    Hypergraph::new(3, 7, vec![vec![0, 1, 6], vec![1, 2, 6], vec![0, 2, 6]]).unwrap()
}

/// Complete 3-graph on `n` vertices.
pub fn complete_3graph(n: usize) -> Hypergraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                edges.push(vec![a, b, c]);
            }
        }
    }
    Hypergraph::new(3, n, edges).unwrap()
}

/// Cycle graph C_n.
pub fn cycle_graph(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// Path graph on `n` vertices.
pub fn path_graph(n: usize) -> Graph {
    Graph::new(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1))).unwrap()
}

/// Complete graph K_n.
pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, edges).unwrap()
}
