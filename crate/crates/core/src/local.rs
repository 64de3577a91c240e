//! Synchronous LOCAL-model simulator: nodes identified only by their colors
//! reconstruct their d-hop views, plus the color-priority maximal independent
//! set demonstrator.
//!
//! The simulator runs exactly d rounds. In round 1 every node learns its
//! neighbors' colors and its incident edges; in each later round it forwards
//! its entire accumulated (vertex, edge) knowledge to its neighbors. After d
//! rounds a node therefore knows every vertex within distance d and exactly
//! those edges with an endpoint within distance d-1 — the precise view d
//! rounds of communication can deliver. A d-hop unique coloring makes the
//! color-based identification injective inside every view, which is what
//! [`oracle_view`] (centralized BFS ground truth) verifies against.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::coloring::{is_dhop_unique, Coloring};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// A node's reconstructed neighborhood: vertices with colors and BFS
/// distances, and the learned edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructedView {
    pub center: NodeId,
    pub radius: usize,
    /// node id -> (color, distance from center); includes the center at 0.
    pub vertices: BTreeMap<NodeId, (usize, usize)>,
    pub edges: BTreeSet<(NodeId, NodeId)>,
}

fn norm(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Centralized ground truth: the view computed directly from global BFS.
pub fn oracle_view(g: &Graph, v: NodeId, d: usize, c: &Coloring) -> Result<ReconstructedView> {
    if v >= g.num_nodes() {
        return Err(Error::validation(format!(
            "node {v} out of range for {} nodes",
            g.num_nodes()
        )));
    }
    if d == 0 {
        return Err(Error::validation("radius d must be >= 1".to_string()));
    }
    if c.len() != g.num_nodes() {
        return Err(Error::validation(format!(
            "coloring covers {} nodes, graph has {}",
            c.len(),
            g.num_nodes()
        )));
    }
    let mut dist: BTreeMap<NodeId, usize> = BTreeMap::new();
    dist.insert(v, 0);
    let mut scratch = crate::graph::BfsScratch::new(g.num_nodes());
    scratch.bounded_bfs(g, v, d, |node, dd| {
        dist.insert(node, dd);
    });

    let vertices: BTreeMap<NodeId, (usize, usize)> =
        dist.iter().map(|(&u, &dd)| (u, (c.color(u), dd))).collect();
    let edges: BTreeSet<(NodeId, NodeId)> = g
        .edges()
        .iter()
        .filter(|e| {
            let du = dist.get(&e.u).copied();
            let dv = dist.get(&e.v).copied();
            du.is_some_and(|x| x < d) || dv.is_some_and(|x| x < d)
        })
        .map(|e| (e.u, e.v))
        .collect();
    Ok(ReconstructedView {
        center: v,
        radius: d,
        vertices,
        edges,
    })
}

/// Per-node accumulated knowledge in color space.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Knowledge {
    verts: BTreeSet<usize>,
    edges: BTreeSet<(usize, usize)>,
}

/// Runs the d-round simulation for every node. Requires (and checks) that the
/// coloring is d-hop unique; otherwise color-based identification would be
/// ambiguous.
pub fn local_view_simulate(g: &Graph, c: &Coloring, d: usize) -> Result<Vec<ReconstructedView>> {
    if d == 0 {
        return Err(Error::validation("radius d must be >= 1".to_string()));
    }
    if !is_dhop_unique(g, c, d)? {
        return Err(Error::validation(format!(
            "coloring is not {d}-hop unique; local identification is ambiguous"
        )));
    }
    let n = g.num_nodes();

    // round 1: neighbor colors and incident edges
    let mut know: Vec<Knowledge> = (0..n)
        .map(|v| {
            let mut k = Knowledge::default();
            k.verts.insert(c.color(v));
            for &(u, _) in g.neighbors(v) {
                k.verts.insert(c.color(u));
                k.edges.insert(norm(c.color(v), c.color(u)));
            }
            k
        })
        .collect();

    // rounds 2..=d: forward everything accumulated, double-buffered
    for _ in 2..=d {
        let next: Vec<Knowledge> = (0..n)
            .map(|v| {
                let mut k = know[v].clone();
                for &(u, _) in g.neighbors(v) {
                    k.verts.extend(know[u].verts.iter().copied());
                    k.edges.extend(know[u].edges.iter().copied());
                }
                k
            })
            .collect();
        know = next;
    }

    // map color-space knowledge back to ids for comparison
    let mut views = Vec::with_capacity(n);
    let mut scratch = crate::graph::BfsScratch::new(n);
    for v in 0..n {
        let mut ball: BTreeMap<NodeId, usize> = BTreeMap::new();
        ball.insert(v, 0);
        scratch.bounded_bfs(g, v, d, |node, dd| {
            ball.insert(node, dd);
        });
        let mut color_to_id: BTreeMap<usize, NodeId> = BTreeMap::new();
        for &u in ball.keys() {
            if color_to_id.insert(c.color(u), u).is_some() {
                return Err(Error::validation(format!(
                    "color {} repeats inside the {d}-hop view of node {v}",
                    c.color(u)
                )));
            }
        }
        let resolve = |color: usize| -> Result<NodeId> {
            color_to_id.get(&color).copied().ok_or_else(|| {
                Error::validation(format!(
                    "node {v} learned color {color} outside its {d}-hop ball"
                ))
            })
        };

        // distances recomputed from the reconstruction itself
        let mut color_dist: BTreeMap<usize, usize> = BTreeMap::new();
        color_dist.insert(c.color(v), 0);
        let mut frontier = vec![c.color(v)];
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            let mut next_frontier = Vec::new();
            for &(a, b) in &know[v].edges {
                for (from, to) in [(a, b), (b, a)] {
                    if frontier.contains(&from) && !color_dist.contains_key(&to) {
                        color_dist.insert(to, level);
                        next_frontier.push(to);
                    }
                }
            }
            frontier = next_frontier;
        }

        let mut vertices = BTreeMap::new();
        for &color in &know[v].verts {
            let id = resolve(color)?;
            let dist = color_dist.get(&color).copied().ok_or_else(|| {
                Error::validation(format!("node {v} knows color {color} but no path to it"))
            })?;
            vertices.insert(id, (color, dist));
        }
        let mut edges = BTreeSet::new();
        for &(a, b) in &know[v].edges {
            edges.insert(norm(resolve(a)?, resolve(b)?));
        }
        views.push(ReconstructedView {
            center: v,
            radius: d,
            vertices,
            edges,
        });
    }
    Ok(views)
}

/// Outcome of the color-priority MIS rounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MisOutcome {
    pub chosen: Vec<NodeId>,
    pub rounds: usize,
}

/// Synchronous maximal independent set: an undecided node joins when its
/// color exceeds every undecided neighbor's color; joined nodes knock out
/// their neighbors. Requires a 1-hop unique coloring so neighbor colors are
/// distinct and progress is guaranteed.
pub fn color_priority_mis(g: &Graph, c: &Coloring) -> Result<MisOutcome> {
    if !is_dhop_unique(g, c, 1)? {
        return Err(Error::validation(
            "coloring is not 1-hop unique".to_string(),
        ));
    }
    #[derive(Clone, Copy, PartialEq)]
    enum State {
        Undecided,
        In,
        Out,
    }
    let n = g.num_nodes();
    let mut state = vec![State::Undecided; n];
    let mut undecided = n;
    let mut rounds = 0;
    while undecided > 0 {
        rounds += 1;
        let joiners: Vec<NodeId> = (0..n)
            .filter(|&v| {
                state[v] == State::Undecided
                    && g.neighbors(v)
                        .iter()
                        .all(|&(u, _)| state[u] != State::Undecided || c.color(u) < c.color(v))
            })
            .collect();
        debug_assert!(!joiners.is_empty(), "local maxima always exist");
        for &v in &joiners {
            state[v] = State::In;
            undecided -= 1;
            for &(u, _) in g.neighbors(v) {
                if state[u] == State::Undecided {
                    state[u] = State::Out;
                    undecided -= 1;
                }
            }
        }
    }
    let chosen = (0..n).filter(|&v| state[v] == State::In).collect();
    Ok(MisOutcome { chosen, rounds })
}

// ---------------------------------------------------------------------------
// JSON dump format
// ---------------------------------------------------------------------------

pub const VIEWS_SCHEMA: &str = "dhopc.views/1";

#[derive(Debug, Serialize)]
pub struct ViewDump {
    pub center: u64,
    pub d: u64,
    /// `[id, color, dist]` triples sorted by id.
    pub vertices: Vec<[u64; 3]>,
    pub edges: Vec<[u64; 2]>,
}

impl ViewDump {
    pub fn from_view(v: &ReconstructedView) -> Self {
        ViewDump {
            center: v.center as u64,
            d: v.radius as u64,
            vertices: v
                .vertices
                .iter()
                .map(|(&id, &(color, dist))| [id as u64, color as u64, dist as u64])
                .collect(),
            edges: v.edges.iter().map(|&(a, b)| [a as u64, b as u64]).collect(),
        }
    }
}
