//! Small named graphs and brute-force oracles used across the test suites.

use crate::graph::Graph;

pub fn path(n: usize) -> Graph {
    let edges = (0..n.saturating_sub(1)).map(|i| (i, i + 1, 1.0)).collect();
    Graph::new(n, edges, None).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let edges = (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect();
    Graph::new(n, edges, None).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    let edges = (1..=leaves).map(|i| (0, i, 1.0)).collect();
    Graph::new(leaves + 1, edges, None).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v, 1.0));
        }
    }
    Graph::new(n, edges, None).unwrap()
}

/// Two disjoint triangles followed by anything else is built edge-by-edge in
/// the tests that need it; this covers the common case.
pub fn two_triangles() -> Graph {
    Graph::new(
        6,
        vec![
            (0, 1, 1.0),
            (1, 2, 1.0),
            (0, 2, 1.0),
            (3, 4, 1.0),
            (4, 5, 1.0),
            (3, 5, 1.0),
        ],
        None,
    )
    .unwrap()
}
