//! Sparse ILP instances in the canonical form `min c'x  s.t. Ax <= b`, and
//! their encoding as labeled bipartite graphs.
//!
//! The encoding places one left node per variable (label `c_i`) and one right
//! node per constraint (label `b_j`), joined by an edge of weight `A_ji`
//! wherever the variable participates. Node numbering is deterministic:
//! variables first (`0..n`), then constraints (`n..n+m`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeEntry, Graph, NodeId};

/// Sparse ILP instance `(A, b, c)` with `A` in triplet form.
#[derive(Debug, Clone, PartialEq)]
pub struct IlpInstance {
    pub num_vars: usize,
    pub num_constraints: usize,
    pub objective: Vec<f64>,
    pub rhs: Vec<f64>,
    /// Nonzero entries as `(row j, col i, value)`, no duplicates.
    pub entries: Vec<(usize, usize, f64)>,
    /// Per-variable integrality flags; parsed and preserved but unused here.
    pub integrality: Option<Vec<bool>>,
}

impl IlpInstance {
    pub fn validate(&self) -> Result<()> {
        if self.objective.len() != self.num_vars {
            return Err(Error::validation(format!(
                "objective has {} entries, expected {}",
                self.objective.len(),
                self.num_vars
            )));
        }
        if self.rhs.len() != self.num_constraints {
            return Err(Error::validation(format!(
                "rhs has {} entries, expected {}",
                self.rhs.len(),
                self.num_constraints
            )));
        }
        if let Some(flags) = &self.integrality {
            if flags.len() != self.num_vars {
                return Err(Error::validation(format!(
                    "integrality has {} entries, expected {}",
                    flags.len(),
                    self.num_vars
                )));
            }
        }
        if self
            .objective
            .iter()
            .chain(self.rhs.iter())
            .any(|x| !x.is_finite())
        {
            return Err(Error::validation("non-finite coefficient".to_string()));
        }
        for &(j, i, v) in &self.entries {
            if j >= self.num_constraints || i >= self.num_vars {
                return Err(Error::validation(format!(
                    "triplet ({j},{i}) out of range for {}x{}",
                    self.num_constraints, self.num_vars
                )));
            }
            if !v.is_finite() {
                return Err(Error::validation(format!(
                    "triplet ({j},{i}) has non-finite value"
                )));
            }
            if v == 0.0 {
                return Err(Error::validation(format!(
                    "triplet ({j},{i}) stores an explicit zero"
                )));
            }
        }
        let mut keys: Vec<(usize, usize)> = self.entries.iter().map(|&(j, i, _)| (j, i)).collect();
        keys.sort_unstable();
        if keys.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::validation("duplicate triplet".to_string()));
        }
        Ok(())
    }
}

/// Which side of the bipartition a node belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeSide {
    Variable,
    Constraint,
}

/// Bipartite variable/constraint graph of an ILP instance. Node `i < num_vars`
/// is variable `x_i` labeled `[c_i]`; node `num_vars + j` is constraint `j`
/// labeled `[b_j]`; edge `(i, num_vars + j)` carries weight `A_ji`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledBipartiteGraph {
    graph: Graph,
    num_vars: usize,
    num_constraints: usize,
}

impl LabeledBipartiteGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_constraints(&self) -> usize {
        self.num_constraints
    }

    pub fn num_nodes(&self) -> usize {
        self.graph.num_nodes()
    }

    pub fn side(&self, v: NodeId) -> NodeSide {
        if v < self.num_vars {
            NodeSide::Variable
        } else {
            NodeSide::Constraint
        }
    }

    /// Rebuilds the wrapper from parts, checking bipartite structure.
    pub fn from_parts(graph: Graph, num_vars: usize, num_constraints: usize) -> Result<Self> {
        if graph.num_nodes() != num_vars + num_constraints {
            return Err(Error::validation(format!(
                "graph has {} nodes, expected {} + {}",
                graph.num_nodes(),
                num_vars,
                num_constraints
            )));
        }
        for e in graph.edges() {
            let sides = (e.u < num_vars, e.v < num_vars);
            if sides.0 == sides.1 {
                return Err(Error::validation(format!(
                    "edge ({},{}) does not join a variable to a constraint",
                    e.u, e.v
                )));
            }
        }
        if graph.node_labels().is_none() {
            return Err(Error::validation(
                "bipartite graph requires node labels".to_string(),
            ));
        }
        Ok(LabeledBipartiteGraph {
            graph,
            num_vars,
            num_constraints,
        })
    }
}

/// Encodes a validated instance as its labeled bipartite graph.
pub fn encode_bipartite(ilp: &IlpInstance) -> Result<LabeledBipartiteGraph> {
    ilp.validate()?;
    let n = ilp.num_vars;
    let m = ilp.num_constraints;
    let mut labels: Vec<Vec<f64>> = Vec::with_capacity(n + m);
    labels.extend(ilp.objective.iter().map(|&c| vec![c]));
    labels.extend(ilp.rhs.iter().map(|&b| vec![b]));
    let edges: Vec<(usize, usize, f64)> =
        ilp.entries.iter().map(|&(j, i, v)| (i, n + j, v)).collect();
    let graph = Graph::new(n + m, edges, Some(labels))?;
    Ok(LabeledBipartiteGraph {
        graph,
        num_vars: n,
        num_constraints: m,
    })
}

// ---------------------------------------------------------------------------
// JSON file formats
// ---------------------------------------------------------------------------

pub const ILP_SCHEMA: &str = "dhopc.ilp/1";
pub const BIPARTITE_SCHEMA: &str = "dhopc.bipartite/1";

#[derive(Debug, Serialize, Deserialize)]
pub struct IlpFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub n: u64,
    pub m: u64,
    pub c: Vec<f64>,
    pub b: Vec<f64>,
    #[serde(rename = "A")]
    pub a: Vec<(u64, u64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integrality: Option<Vec<bool>>,
}

impl IlpFile {
    pub fn from_instance(ilp: &IlpInstance) -> Self {
        IlpFile {
            schema: Some(ILP_SCHEMA.to_string()),
            n: ilp.num_vars as u64,
            m: ilp.num_constraints as u64,
            c: ilp.objective.clone(),
            b: ilp.rhs.clone(),
            a: ilp
                .entries
                .iter()
                .map(|&(j, i, v)| (j as u64, i as u64, v))
                .collect(),
            integrality: ilp.integrality.clone(),
        }
    }

    pub fn into_instance(self) -> Result<IlpInstance> {
        crate::io::check_schema(self.schema.as_deref(), ILP_SCHEMA)?;
        let ilp = IlpInstance {
            num_vars: self.n as usize,
            num_constraints: self.m as usize,
            objective: self.c,
            rhs: self.b,
            entries: self
                .a
                .into_iter()
                .map(|(j, i, v)| (j as usize, i as usize, v))
                .collect(),
            integrality: self.integrality,
        };
        ilp.validate()?;
        Ok(ilp)
    }
}

pub fn parse_ilp(text: &str) -> Result<IlpInstance> {
    let file: IlpFile =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("ilp file: {e}")))?;
    file.into_instance()
}

pub fn write_ilp(ilp: &IlpInstance) -> String {
    crate::io::to_pretty_json(&IlpFile::from_instance(ilp))
}

/// Bipartite graph document: a graph file extended with the bipartition
/// sizes, so plain graph consumers can read it unchanged.
#[derive(Debug, Serialize, Deserialize)]
pub struct BipartiteFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub num_vars: u64,
    pub num_constraints: u64,
    pub num_nodes: u64,
    pub edges: Vec<EdgeEntry>,
    pub node_labels: Vec<Vec<f64>>,
}

impl BipartiteFile {
    pub fn from_bipartite(bg: &LabeledBipartiteGraph) -> Self {
        BipartiteFile {
            schema: Some(BIPARTITE_SCHEMA.to_string()),
            num_vars: bg.num_vars() as u64,
            num_constraints: bg.num_constraints() as u64,
            num_nodes: bg.num_nodes() as u64,
            edges: bg
                .graph()
                .edges()
                .iter()
                .map(|e| EdgeEntry(e.u as u64, e.v as u64, e.w))
                .collect(),
            node_labels: bg.graph().node_labels().unwrap_or(&[]).to_vec(),
        }
    }

    pub fn into_bipartite(self) -> Result<LabeledBipartiteGraph> {
        crate::io::check_schema(self.schema.as_deref(), BIPARTITE_SCHEMA)?;
        let edges = self
            .edges
            .into_iter()
            .map(|EdgeEntry(u, v, w)| (u as usize, v as usize, w))
            .collect();
        let graph = Graph::new(self.num_nodes as usize, edges, Some(self.node_labels))?;
        LabeledBipartiteGraph::from_parts(
            graph,
            self.num_vars as usize,
            self.num_constraints as usize,
        )
    }
}

pub fn parse_bipartite(text: &str) -> Result<LabeledBipartiteGraph> {
    let file: BipartiteFile =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("bipartite file: {e}")))?;
    file.into_bipartite()
}

pub fn write_bipartite(bg: &LabeledBipartiteGraph) -> String {
    crate::io::to_pretty_json(&BipartiteFile::from_bipartite(bg))
}
