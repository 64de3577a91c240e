//! Undirected simple graphs with k-hop neighborhood queries and power-graph
//! construction.
//!
//! Graphs are immutable once built: construction canonicalizes the edge list
//! (endpoints ordered, edges sorted, duplicates rejected) and derives
//! adjacency lists sorted ascending by neighbor id, so every downstream
//! algorithm is deterministic. Edge weights are carried for the message
//! passing engine but ignored by all topology operations.

use std::collections::{BTreeMap, VecDeque};

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type NodeId = usize;

/// One undirected edge, canonically stored with `u < v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub w: f64,
}

/// Immutable undirected simple graph with optional per-node label vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    num_nodes: usize,
    edges: Vec<Edge>,
    node_labels: Option<Vec<Vec<f64>>>,
    adj: Vec<Vec<(NodeId, f64)>>,
}

/// All vertices within `radius` hops of `center`, with exact BFS distances.
/// The center itself is excluded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodView {
    pub center: NodeId,
    pub radius: usize,
    pub members: BTreeMap<NodeId, usize>,
}

impl Graph {
    /// Builds a canonical graph from raw parts. Rejects out-of-range
    /// endpoints, self-loops, duplicate undirected edges, non-finite weights,
    /// and malformed label tables.
    pub fn new(
        num_nodes: usize,
        edges: Vec<(NodeId, NodeId, f64)>,
        node_labels: Option<Vec<Vec<f64>>>,
    ) -> Result<Self> {
        let mut canon: Vec<Edge> = Vec::with_capacity(edges.len());
        for (u, v, w) in edges {
            if u >= num_nodes || v >= num_nodes {
                return Err(Error::validation(format!(
                    "edge ({u},{v}) out of range for {num_nodes} nodes"
                )));
            }
            if u == v {
                return Err(Error::validation(format!("self-loop at node {u}")));
            }
            if !w.is_finite() {
                return Err(Error::validation(format!(
                    "edge ({u},{v}) has non-finite weight"
                )));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            canon.push(Edge { u: a, v: b, w });
        }
        canon.sort_by_key(|e| (e.u, e.v));
        for pair in canon.windows(2) {
            if pair[0].u == pair[1].u && pair[0].v == pair[1].v {
                return Err(Error::validation(format!(
                    "duplicate edge ({},{})",
                    pair[0].u, pair[0].v
                )));
            }
        }

        if let Some(labels) = &node_labels {
            if labels.len() != num_nodes {
                return Err(Error::validation(format!(
                    "node_labels has {} rows, expected {num_nodes}",
                    labels.len()
                )));
            }
            if let Some(first) = labels.first() {
                let dim = first.len();
                if labels.iter().any(|l| l.len() != dim) {
                    return Err(Error::validation(
                        "node label vectors have mixed dimensions".to_string(),
                    ));
                }
            }
            if labels.iter().flatten().any(|x| !x.is_finite()) {
                return Err(Error::validation("non-finite node label".to_string()));
            }
        }

        let mut adj: Vec<Vec<(NodeId, f64)>> = vec![Vec::new(); num_nodes];
        for e in &canon {
            adj[e.u].push((e.v, e.w));
            adj[e.v].push((e.u, e.w));
        }
        for list in &mut adj {
            list.sort_by_key(|&(n, _)| n);
        }

        Ok(Graph {
            num_nodes,
            edges: canon,
            node_labels,
            adj,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, sorted by `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_labels(&self) -> Option<&[Vec<f64>]> {
        self.node_labels.as_deref()
    }

    /// Label dimension, if labels are present (0-dim labels are possible).
    pub fn label_dim(&self) -> Option<usize> {
        self.node_labels
            .as_ref()
            .map(|l| l.first().map_or(0, |row| row.len()))
    }

    /// Neighbors of `v` with edge weights, sorted ascending by neighbor id.
    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, f64)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&(a, b)))
            .is_ok()
    }
}

/// Reusable bounded-BFS scratch space. One instance per traversal loop keeps
/// repeated k-hop queries allocation-free.
pub(crate) struct BfsScratch {
    seen_epoch: Vec<u32>,
    epoch: u32,
    queue: VecDeque<(NodeId, usize)>,
}

impl BfsScratch {
    pub(crate) fn new(num_nodes: usize) -> Self {
        BfsScratch {
            seen_epoch: vec![0; num_nodes],
            epoch: 0,
            queue: VecDeque::new(),
        }
    }

    /// Runs BFS from `start` out to `max_dist` hops, calling `visit(node, dist)`
    /// for every reached node other than `start` (dist in `1..=max_dist`).
    pub(crate) fn bounded_bfs(
        &mut self,
        g: &Graph,
        start: NodeId,
        max_dist: usize,
        mut visit: impl FnMut(NodeId, usize),
    ) {
        self.epoch += 1;
        let epoch = self.epoch;
        self.queue.clear();
        self.seen_epoch[start] = epoch;
        self.queue.push_back((start, 0));
        while let Some((node, dist)) = self.queue.pop_front() {
            if dist == max_dist {
                continue;
            }
            for &(nbr, _) in g.neighbors(node) {
                if self.seen_epoch[nbr] != epoch {
                    self.seen_epoch[nbr] = epoch;
                    visit(nbr, dist + 1);
                    self.queue.push_back((nbr, dist + 1));
                }
            }
        }
    }
}

/// All vertices at distance `1..=k` from `v`, with exact BFS distances.
pub fn khop_neighbors(g: &Graph, v: NodeId, k: usize) -> Result<NeighborhoodView> {
    if v >= g.num_nodes() {
        return Err(Error::validation(format!(
            "node {v} out of range for {} nodes",
            g.num_nodes()
        )));
    }
    if k == 0 {
        return Err(Error::validation("hop count must be >= 1".to_string()));
    }
    let mut members = BTreeMap::new();
    let mut scratch = BfsScratch::new(g.num_nodes());
    scratch.bounded_bfs(g, v, k, |node, dist| {
        members.insert(node, dist);
    });
    Ok(NeighborhoodView {
        center: v,
        radius: k,
        members,
    })
}

/// Materializes every node's k-hop neighbor list (ids only, sorted ascending).
/// This is the single BFS sweep behind the power graph, the degree statistics,
/// and the greedy coloring.
pub(crate) fn khop_neighbor_sets(g: &Graph, k: usize) -> Vec<Vec<NodeId>> {
    let mut sets: Vec<Vec<NodeId>> = Vec::with_capacity(g.num_nodes());
    let mut scratch = BfsScratch::new(g.num_nodes());
    for v in 0..g.num_nodes() {
        let mut members = Vec::new();
        scratch.bounded_bfs(g, v, k, |node, _| members.push(node));
        members.sort_unstable();
        sets.push(members);
    }
    sets
}

/// The k-th power of `g`: same node set, an edge wherever the distance in `g`
/// is between 1 and `k`. Weights are all 1.0 and labels are dropped.
pub fn power_graph(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::validation("hop count must be >= 1".to_string()));
    }
    let sets = khop_neighbor_sets(g, k);
    let mut edges = Vec::new();
    for (v, members) in sets.iter().enumerate() {
        for &u in members {
            if u > v {
                edges.push((v, u, 1.0));
            }
        }
    }
    Graph::new(g.num_nodes(), edges, None)
}

/// Maximum k-hop degree over all nodes: `max_v |N_k(v)|`.
pub fn max_khop_degree(g: &Graph, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::validation("hop count must be >= 1".to_string()));
    }
    let mut scratch = BfsScratch::new(g.num_nodes());
    let mut best = 0;
    for v in 0..g.num_nodes() {
        let mut count = 0usize;
        scratch.bounded_bfs(g, v, k, |_, _| count += 1);
        best = best.max(count);
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// JSON file format
// ---------------------------------------------------------------------------

/// Serialized edge entry: `[u, v]` for unit weight, `[u, v, w]` otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeEntry(pub u64, pub u64, pub f64);

impl Serialize for EdgeEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.2 == 1.0 {
            let mut seq = serializer.serialize_seq(Some(2))?;
            seq.serialize_element(&self.0)?;
            seq.serialize_element(&self.1)?;
            seq.end()
        } else {
            let mut seq = serializer.serialize_seq(Some(3))?;
            seq.serialize_element(&self.0)?;
            seq.serialize_element(&self.1)?;
            seq.serialize_element(&self.2)?;
            seq.end()
        }
    }
}

impl<'de> Deserialize<'de> for EdgeEntry {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct EdgeVisitor;
        impl<'de> Visitor<'de> for EdgeVisitor {
            type Value = EdgeEntry;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an array [u, v] or [u, v, w]")
            }

            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<EdgeEntry, A::Error> {
                let u: u64 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let v: u64 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                let w: Option<f64> = seq.next_element()?;
                if seq.next_element::<serde_json::Value>()?.is_some() {
                    return Err(de::Error::custom("edge entry has more than 3 elements"));
                }
                Ok(EdgeEntry(u, v, w.unwrap_or(1.0)))
            }
        }
        deserializer.deserialize_seq(EdgeVisitor)
    }
}

/// On-disk graph document. Key order matches the writer contract:
/// `num_nodes`, `edges` (sorted by `(u, v)`, `u < v`), then `node_labels`.
#[derive(Debug, Serialize, Deserialize)]
pub struct GraphFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub num_nodes: u64,
    pub edges: Vec<EdgeEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node_labels: Option<Vec<Vec<f64>>>,
}

pub const GRAPH_SCHEMA: &str = "dhopc.graph/1";

impl GraphFile {
    pub fn from_graph(g: &Graph) -> Self {
        GraphFile {
            schema: Some(GRAPH_SCHEMA.to_string()),
            num_nodes: g.num_nodes() as u64,
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeEntry(e.u as u64, e.v as u64, e.w))
                .collect(),
            node_labels: g.node_labels().map(|l| l.to_vec()),
        }
    }

    pub fn into_graph(self) -> Result<Graph> {
        // bipartite documents are a superset of graph documents and stay
        // readable by every plain graph consumer
        if self.schema.as_deref() != Some(crate::ilp::BIPARTITE_SCHEMA) {
            crate::io::check_schema(self.schema.as_deref(), GRAPH_SCHEMA)?;
        }
        let edges = self
            .edges
            .into_iter()
            .map(|EdgeEntry(u, v, w)| (u as usize, v as usize, w))
            .collect();
        Graph::new(self.num_nodes as usize, edges, self.node_labels)
    }
}

/// Parses a graph from its JSON document. Malformed JSON is a parse error;
/// range and duplicate violations are validation errors.
pub fn build_graph(text: &str) -> Result<Graph> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("graph file: {e}")))?;
    file.into_graph()
}

/// Renders a graph as its canonical JSON document.
pub fn write_graph(g: &Graph) -> String {
    crate::io::to_pretty_json(&GraphFile::from_graph(g))
}
