//! Node-feature augmentation for the identifier schemes compared on ILP
//! graphs: raw labels, position ramps, seeded uniform noise, and coloring ids.
//!
//! Every scheme appends at most one scalar channel normalized into `[0, 1]`,
//! so the feature dimension never depends on the palette size. (A one-hot
//! color encoding would work too, but ties the input width to the palette;
//! the scalar channel is the default here.) The uniform scheme draws one
//! value per node from the seeded [`SplitMix64`] stream and records the seed,
//! making the matrix reproducible bit-for-bit.

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::ilp::{LabeledBipartiteGraph, NodeSide};
use crate::rng::SplitMix64;

/// Identifier-augmentation scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UidScheme {
    /// Raw labels only.
    None,
    /// Variable node `i` gets `i / max(n-1, 1)`; constraint nodes get `0.0`.
    Position,
    /// One draw per node from `U[0, 1)` using the recorded seed.
    Uniform,
    /// `C(v) / max(|C|-1, 1)` from a supplied coloring.
    ColorUid,
}

impl UidScheme {
    pub fn as_str(self) -> &'static str {
        match self {
            UidScheme::None => "none",
            UidScheme::Position => "position",
            UidScheme::Uniform => "uniform",
            UidScheme::ColorUid => "coloruid",
        }
    }
}

impl std::str::FromStr for UidScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(UidScheme::None),
            "position" => Ok(UidScheme::Position),
            "uniform" => Ok(UidScheme::Uniform),
            "coloruid" => Ok(UidScheme::ColorUid),
            other => Err(Error::validation(format!("unknown scheme {other:?}"))),
        }
    }
}

/// Per-node augmented input features.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub scheme: UidScheme,
    pub seed: Option<u64>,
    pub features: Vec<Vec<f64>>,
}

impl FeatureMatrix {
    pub fn dim(&self) -> usize {
        self.features.first().map_or(0, |row| row.len())
    }

    pub fn num_rows(&self) -> usize {
        self.features.len()
    }
}

/// Builds the augmented feature matrix `[label || id-channel]` for a labeled
/// bipartite graph. `coloruid` requires a coloring of the graph; `uniform`
/// requires a seed.
pub fn augment_features(
    bg: &LabeledBipartiteGraph,
    scheme: UidScheme,
    coloring: Option<&Coloring>,
    seed: Option<u64>,
) -> Result<FeatureMatrix> {
    let n_nodes = bg.num_nodes();
    let labels = bg
        .graph()
        .node_labels()
        .ok_or_else(|| Error::validation("bipartite graph has no labels".to_string()))?;

    let id_channel: Option<Vec<f64>> = match scheme {
        UidScheme::None => None,
        UidScheme::Position => {
            let n_vars = bg.num_vars();
            let denom = n_vars.saturating_sub(1).max(1) as f64;
            Some(
                (0..n_nodes)
                    .map(|v| match bg.side(v) {
                        NodeSide::Variable => v as f64 / denom,
                        NodeSide::Constraint => 0.0,
                    })
                    .collect(),
            )
        }
        UidScheme::Uniform => {
            let seed = seed.ok_or_else(|| Error::validation("uniform scheme requires a seed"))?;
            let mut rng = SplitMix64::new(seed);
            Some((0..n_nodes).map(|_| rng.next_f64()).collect())
        }
        UidScheme::ColorUid => {
            let c = coloring.ok_or_else(|| {
                Error::validation("coloruid scheme requires a coloring".to_string())
            })?;
            if c.len() != n_nodes {
                return Err(Error::validation(format!(
                    "coloring covers {} nodes, graph has {n_nodes}",
                    c.len()
                )));
            }
            let denom = c.num_colors().saturating_sub(1).max(1) as f64;
            Some((0..n_nodes).map(|v| c.color(v) as f64 / denom).collect())
        }
    };

    let features = (0..n_nodes)
        .map(|v| {
            let mut row = labels[v].clone();
            if let Some(channel) = &id_channel {
                row.push(channel[v]);
            }
            row
        })
        .collect();

    Ok(FeatureMatrix {
        scheme,
        seed: if scheme == UidScheme::Uniform {
            seed
        } else {
            None
        },
        features,
    })
}

// ---------------------------------------------------------------------------
// JSON file format
// ---------------------------------------------------------------------------

pub const FEATURES_SCHEMA: &str = "dhopc.features/1";

#[derive(Debug, Serialize, Deserialize)]
pub struct FeatureFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub scheme: UidScheme,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub dim: u64,
    pub features: Vec<Vec<f64>>,
}

impl FeatureFile {
    pub fn from_matrix(m: &FeatureMatrix) -> Self {
        FeatureFile {
            schema: Some(FEATURES_SCHEMA.to_string()),
            scheme: m.scheme,
            seed: m.seed,
            dim: m.dim() as u64,
            features: m.features.clone(),
        }
    }

    pub fn into_matrix(self) -> Result<FeatureMatrix> {
        crate::io::check_schema(self.schema.as_deref(), FEATURES_SCHEMA)?;
        if self.features.iter().any(|row| row.len() as u64 != self.dim) {
            return Err(Error::validation("feature rows have mixed dimensions"));
        }
        Ok(FeatureMatrix {
            scheme: self.scheme,
            seed: self.seed,
            features: self.features,
        })
    }
}

pub fn parse_features(text: &str) -> Result<FeatureMatrix> {
    let file: FeatureFile =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("feature file: {e}")))?;
    file.into_matrix()
}

pub fn write_features(m: &FeatureMatrix) -> String {
    crate::io::to_pretty_json(&FeatureFile::from_matrix(m))
}
