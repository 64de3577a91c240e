//! Shared helpers and independent oracles for the integration suites.
#![allow(dead_code)] // each test target compiles its own copy

use dhopc_core::graph::Graph;
use dhopc_core::rng::SplitMix64;

pub fn path(n: usize) -> Graph {
    let edges = (0..n.saturating_sub(1)).map(|i| (i, i + 1, 1.0)).collect();
    Graph::new(n, edges, None).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let edges = (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect();
    Graph::new(n, edges, None).unwrap()
}

/// Floyd–Warshall all-pairs shortest paths: the distance oracle kept
/// independent of the BFS code it checks.
pub fn all_pairs_distances(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.num_nodes();
    let mut dist = vec![vec![None; n]; n];
    for v in 0..n {
        dist[v][v] = Some(0);
    }
    for e in g.edges() {
        dist[e.u][e.v] = Some(1);
        dist[e.v][e.u] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            let Some(dik) = dist[i][k] else { continue };
            for j in 0..n {
                let Some(dkj) = dist[k][j] else { continue };
                let through = dik + dkj;
                if dist[i][j].is_none_or(|d| through < d) {
                    dist[i][j] = Some(through);
                }
            }
        }
    }
    dist
}

/// Uniformly random coloring with the given palette size.
pub fn random_coloring(n: usize, palette: usize, rng: &mut SplitMix64) -> Vec<usize> {
    (0..n)
        .map(|_| rng.next_below(palette as u64) as usize)
        .collect()
}

/// Fisher–Yates permutation of 0..n.
pub fn random_permutation(n: usize, rng: &mut SplitMix64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.next_below(i as u64 + 1) as usize;
        perm.swap(i, j);
    }
    perm
}
