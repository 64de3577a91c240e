//! Deterministic d-layer message passing.
//!
//! The layer recursion is
//!
//! ```text
//! h0_v = emb(feat_v)                      (or emb_{C(v)} in colored mode)
//! hk_v = Merge_k(h(k-1)_v, sum_{u in N1(v)} W(u,v) * h(k-1)_u)
//! ```
//!
//! with the weighted sum over an empty neighborhood defined as the zero
//! vector and each `Merge_k` a two-layer perceptron with a rectifier over the
//! concatenation `[h_v || aggr]`. Aggregation sums each component over
//! contributions sorted by total order first, so relabeling nodes permutes
//! the outputs bit-for-bit and repeated runs are byte-identical.

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::graph::Graph;
use crate::rng::SplitMix64;

/// Network shape: `depth` message-passing layers over the given widths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GnnConfig {
    pub depth: usize,
    pub in_dim: usize,
    pub hidden_dim: usize,
    pub out_dim: usize,
}

impl GnnConfig {
    pub fn validate(&self) -> Result<()> {
        if self.depth == 0 || self.in_dim == 0 || self.hidden_dim == 0 || self.out_dim == 0 {
            return Err(Error::validation(
                "depth and all dimensions must be >= 1".to_string(),
            ));
        }
        Ok(())
    }

    fn layer_out_dim(&self, layer: usize) -> usize {
        if layer + 1 == self.depth {
            self.out_dim
        } else {
            self.hidden_dim
        }
    }
}

/// Dense row-major linear map (`rows x cols`), no bias.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearMap {
    pub weight: Vec<Vec<f64>>,
}

impl LinearMap {
    pub fn identity(dim: usize) -> Self {
        let weight = (0..dim)
            .map(|r| (0..dim).map(|c| if r == c { 1.0 } else { 0.0 }).collect())
            .collect();
        LinearMap { weight }
    }

    fn rows(&self) -> usize {
        self.weight.len()
    }

    fn cols(&self) -> usize {
        self.weight.first().map_or(0, |r| r.len())
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.weight
            .iter()
            .map(|row| row.iter().zip(x).map(|(w, xi)| w * xi).sum())
            .collect()
    }

    fn check_shape(&self, rows: usize, cols: usize, what: &str) -> Result<()> {
        if self.rows() != rows || self.weight.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "{what}: expected {rows}x{cols}, found {}x{}",
                self.rows(),
                self.cols()
            )));
        }
        Ok(())
    }
}

/// One merge perceptron: `y = W2 * relu(W1 * [h || aggr] + b1) + b2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergeMlp {
    pub w1: Vec<Vec<f64>>,
    pub b1: Vec<f64>,
    pub w2: Vec<Vec<f64>>,
    pub b2: Vec<f64>,
}

impl MergeMlp {
    fn apply(&self, input: &[f64]) -> Vec<f64> {
        let hidden: Vec<f64> = self
            .w1
            .iter()
            .zip(&self.b1)
            .map(|(row, b)| {
                let z: f64 = row.iter().zip(input).map(|(w, x)| w * x).sum::<f64>() + b;
                z.max(0.0)
            })
            .collect();
        self.w2
            .iter()
            .zip(&self.b2)
            .map(|(row, b)| row.iter().zip(&hidden).map(|(w, h)| w * h).sum::<f64>() + b)
            .collect()
    }

    /// The hidden width of the perceptron is free; only the input and output
    /// widths are pinned by the network shape.
    fn check_shape(&self, in_dim: usize, out_dim: usize, layer: usize) -> Result<()> {
        let mid_dim = self.w1.len();
        let ok = mid_dim >= 1
            && self.w1.iter().all(|r| r.len() == in_dim)
            && self.b1.len() == mid_dim
            && self.w2.len() == out_dim
            && self.w2.iter().all(|r| r.len() == mid_dim)
            && self.b2.len() == out_dim;
        if !ok {
            return Err(Error::Dimension(format!(
                "merge layer {layer}: expected (mid x {in_dim}) -> ({out_dim} x mid)"
            )));
        }
        Ok(())
    }
}

/// Embedding tables: one shared map, or one map per color id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbTables {
    Shared(LinearMap),
    PerColor(Vec<LinearMap>),
}

/// Full parameter set for a forward pass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    pub emb: EmbTables,
    pub merges: Vec<MergeMlp>,
}

impl ParamSet {
    /// Samples every weight uniformly from `[-1, 1)` with the SplitMix64
    /// stream of `seed`. Fill order: embedding tables by color then row-major,
    /// then per layer `w1` rows, `b1`, `w2` rows, `b2`.
    pub fn seeded(cfg: &GnnConfig, num_tables: usize, seed: u64) -> Result<Self> {
        cfg.validate()?;
        if num_tables == 0 {
            return Err(Error::validation("need at least one table".to_string()));
        }
        let mut rng = SplitMix64::new(seed);
        let mut matrix = |rows: usize, cols: usize| -> Vec<Vec<f64>> {
            (0..rows)
                .map(|_| (0..cols).map(|_| rng.next_signed_unit()).collect())
                .collect()
        };
        let tables: Vec<LinearMap> = (0..num_tables)
            .map(|_| LinearMap {
                weight: matrix(cfg.hidden_dim, cfg.in_dim),
            })
            .collect();
        let emb = if num_tables == 1 {
            EmbTables::Shared(tables.into_iter().next().unwrap())
        } else {
            EmbTables::PerColor(tables)
        };
        let merges = (0..cfg.depth)
            .map(|k| {
                let out = cfg.layer_out_dim(k);
                MergeMlp {
                    w1: matrix(cfg.hidden_dim, 2 * cfg.hidden_dim),
                    b1: matrix(1, cfg.hidden_dim).remove(0),
                    w2: matrix(out, cfg.hidden_dim),
                    b2: matrix(1, out).remove(0),
                }
            })
            .collect();
        Ok(ParamSet { emb, merges })
    }

    fn check_shapes(&self, cfg: &GnnConfig) -> Result<()> {
        let tables: Vec<&LinearMap> = match &self.emb {
            EmbTables::Shared(t) => vec![t],
            EmbTables::PerColor(ts) => ts.iter().collect(),
        };
        for t in tables {
            t.check_shape(cfg.hidden_dim, cfg.in_dim, "embedding table")?;
        }
        if self.merges.len() != cfg.depth {
            return Err(Error::Dimension(format!(
                "{} merge layers for depth {}",
                self.merges.len(),
                cfg.depth
            )));
        }
        for (k, m) in self.merges.iter().enumerate() {
            m.check_shape(2 * cfg.hidden_dim, cfg.layer_out_dim(k), k)?;
        }
        Ok(())
    }
}

/// Weighted-sum aggregation with a fixed reduction order: contributions are
/// sorted per component by f64 total order before summing.
fn aggregate(
    g: &Graph,
    states: &[Vec<f64>],
    v: usize,
    dim: usize,
    scratch: &mut Vec<f64>,
) -> Vec<f64> {
    let nbrs = g.neighbors(v);
    let mut out = vec![0.0; dim];
    if nbrs.is_empty() {
        return out;
    }
    for (c, slot) in out.iter_mut().enumerate() {
        scratch.clear();
        scratch.extend(nbrs.iter().map(|&(u, w)| w * states[u][c]));
        scratch.sort_by(|a, b| a.total_cmp(b));
        *slot = scratch.iter().sum();
    }
    out
}

fn run_layers(
    g: &Graph,
    mut states: Vec<Vec<f64>>,
    params: &ParamSet,
    cfg: &GnnConfig,
) -> Vec<Vec<f64>> {
    let mut scratch = Vec::new();
    let mut input = vec![0.0; 2 * cfg.hidden_dim];
    for merge in &params.merges {
        let states_ref = &states;
        let next: Vec<Vec<f64>> = (0..g.num_nodes())
            .map(|v| {
                let aggr = aggregate(g, states_ref, v, cfg.hidden_dim, &mut scratch);
                input[..cfg.hidden_dim].copy_from_slice(&states_ref[v]);
                input[cfg.hidden_dim..].copy_from_slice(&aggr);
                merge.apply(&input)
            })
            .collect();
        states = next;
    }
    states
}

fn check_inputs(
    g: &Graph,
    feats: &FeatureMatrix,
    params: &ParamSet,
    cfg: &GnnConfig,
) -> Result<()> {
    cfg.validate()?;
    params.check_shapes(cfg)?;
    if feats.num_rows() != g.num_nodes() {
        return Err(Error::Dimension(format!(
            "feature matrix has {} rows, graph has {} nodes",
            feats.num_rows(),
            g.num_nodes()
        )));
    }
    if g.num_nodes() > 0 && feats.dim() != cfg.in_dim {
        return Err(Error::Dimension(format!(
            "feature dim {} != configured in_dim {}",
            feats.dim(),
            cfg.in_dim
        )));
    }
    Ok(())
}

/// Anonymous forward pass: every node shares one embedding table.
pub fn forward(
    g: &Graph,
    feats: &FeatureMatrix,
    params: &ParamSet,
    cfg: &GnnConfig,
) -> Result<Vec<Vec<f64>>> {
    check_inputs(g, feats, params, cfg)?;
    let EmbTables::Shared(table) = &params.emb else {
        return Err(Error::validation(
            "anonymous forward requires a single shared embedding table".to_string(),
        ));
    };
    let states: Vec<Vec<f64>> = feats.features.iter().map(|f| table.apply(f)).collect();
    Ok(run_layers(g, states, params, cfg))
}

/// Color-conditioned forward pass: layer 0 uses the table of each node's
/// color; everything after layer 0 is identical to [`forward`].
pub fn forward_colored(
    g: &Graph,
    coloring: &Coloring,
    feats: &FeatureMatrix,
    params: &ParamSet,
    cfg: &GnnConfig,
) -> Result<Vec<Vec<f64>>> {
    check_inputs(g, feats, params, cfg)?;
    if coloring.len() != g.num_nodes() {
        return Err(Error::validation(format!(
            "coloring covers {} nodes, graph has {}",
            coloring.len(),
            g.num_nodes()
        )));
    }
    let tables: &[LinearMap] = match &params.emb {
        EmbTables::PerColor(ts) => ts,
        EmbTables::Shared(t) => std::slice::from_ref(t),
    };
    let states: Vec<Vec<f64>> = feats
        .features
        .iter()
        .enumerate()
        .map(|(v, f)| {
            let c = coloring.color(v);
            let table = tables.get(c).ok_or(Error::MissingColorTable(c))?;
            Ok(table.apply(f))
        })
        .collect::<Result<_>>()?;
    Ok(run_layers(g, states, params, cfg))
}

// ---------------------------------------------------------------------------
// JSON file format
// ---------------------------------------------------------------------------

pub const PARAMS_SCHEMA: &str = "dhopc.params/1";
pub const OUTPUTS_SCHEMA: &str = "dhopc.outputs/1";

/// On-disk parameter document; the config travels with the weights.
#[derive(Debug, Serialize, Deserialize)]
pub struct ParamFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub config: GnnConfig,
    pub params: ParamSet,
}

impl ParamFile {
    pub fn new(config: GnnConfig, params: ParamSet) -> Self {
        ParamFile {
            schema: Some(PARAMS_SCHEMA.to_string()),
            config,
            params,
        }
    }

    pub fn into_parts(self) -> Result<(GnnConfig, ParamSet)> {
        crate::io::check_schema(self.schema.as_deref(), PARAMS_SCHEMA)?;
        self.params.check_shapes(&self.config)?;
        Ok((self.config, self.params))
    }
}

pub fn parse_params(text: &str) -> Result<(GnnConfig, ParamSet)> {
    let file: ParamFile =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("param file: {e}")))?;
    file.into_parts()
}

pub fn write_params(cfg: &GnnConfig, params: &ParamSet) -> String {
    crate::io::to_pretty_json(&ParamFile::new(*cfg, params.clone()))
}
