//! Symbolic message passing: 1-WL color refinement over a stable 64-bit
//! digest, the injective-aggregation idealization of the numeric engine.
//!
//! Each round replaces a node's hash with the digest of its own hash and the
//! sorted multiset of `(neighbor hash, edge weight)` pairs; the graph hash
//! digests the sorted node hashes. The digest is FNV-1a (64-bit) over a
//! canonical little-endian, length-prefixed byte string, finished with a
//! SplitMix64 avalanche, so hashes are identical across runs and platforms.
//! Edge weights enter via their exact bit pattern.

use serde::Serialize;

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Stable digest: FNV-1a 64 with a SplitMix64 finalizer.
pub fn digest(bytes: &[u8]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(PRIME);
    }
    // avalanche
    h = (h ^ (h >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    h = (h ^ (h >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    h ^ (h >> 31)
}

/// Refinement state after a number of synchronous rounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WlState {
    pub node_hashes: Vec<u64>,
    pub round: usize,
    pub graph_hash: u64,
}

fn graph_hash(num_nodes: usize, node_hashes: &[u64]) -> u64 {
    let mut sorted = node_hashes.to_vec();
    sorted.sort_unstable();
    let mut bytes = Vec::with_capacity(8 + 8 * sorted.len());
    bytes.extend_from_slice(&(num_nodes as u64).to_le_bytes());
    for h in sorted {
        bytes.extend_from_slice(&h.to_le_bytes());
    }
    digest(&bytes)
}

/// Runs `rounds` of WL refinement from the given per-node init tokens.
pub fn wl_hash(g: &Graph, init: &[u64], rounds: usize) -> Result<WlState> {
    if init.len() != g.num_nodes() {
        return Err(Error::validation(format!(
            "{} init tokens for {} nodes",
            init.len(),
            g.num_nodes()
        )));
    }
    let mut hashes = init.to_vec();
    let mut next = vec![0u64; hashes.len()];
    let mut msgs: Vec<(u64, u64)> = Vec::new();
    let mut bytes: Vec<u8> = Vec::new();
    for _ in 0..rounds {
        for v in 0..g.num_nodes() {
            msgs.clear();
            msgs.extend(
                g.neighbors(v)
                    .iter()
                    .map(|&(u, w)| (hashes[u], w.to_bits())),
            );
            msgs.sort_unstable();
            bytes.clear();
            bytes.extend_from_slice(&hashes[v].to_le_bytes());
            bytes.extend_from_slice(&(msgs.len() as u64).to_le_bytes());
            for &(h, w) in &msgs {
                bytes.extend_from_slice(&h.to_le_bytes());
                bytes.extend_from_slice(&w.to_le_bytes());
            }
            next[v] = digest(&bytes);
        }
        std::mem::swap(&mut hashes, &mut next);
    }
    Ok(WlState {
        graph_hash: graph_hash(g.num_nodes(), &hashes),
        node_hashes: hashes,
        round: rounds,
    })
}

/// Identical token for every node: the anonymous initialization.
pub fn init_anonymous(num_nodes: usize) -> Vec<u64> {
    vec![0; num_nodes]
}

/// One token per color id.
pub fn init_colored(c: &Coloring) -> Vec<u64> {
    c.colors().iter().map(|&c| c as u64).collect()
}

/// Tokens combining the node label vector with the color, for the
/// feature-level identifier variant. Missing labels hash as empty vectors.
pub fn init_label_color(g: &Graph, c: &Coloring) -> Vec<u64> {
    let empty: Vec<f64> = Vec::new();
    (0..g.num_nodes())
        .map(|v| {
            let label = g.node_labels().map_or(&empty[..], |l| &l[v][..]);
            let mut bytes = Vec::with_capacity(16 + 8 * label.len());
            bytes.extend_from_slice(&(label.len() as u64).to_le_bytes());
            for x in label {
                bytes.extend_from_slice(&x.to_bits().to_le_bytes());
            }
            bytes.extend_from_slice(&(c.color(v) as u64).to_le_bytes());
            digest(&bytes)
        })
        .collect()
}

/// Identifier scheme for [`distinguish`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistinguishScheme {
    Anonymous,
    LocalUid,
}

/// Attempts to separate two graphs by comparing WL graph hashes under the
/// chosen scheme. `local_uid` colors each graph with the greedy d-hop unique
/// coloring first. A `true` result certifies the graphs are distinguishable;
/// `false` is inconclusive.
pub fn distinguish(
    g1: &Graph,
    g2: &Graph,
    scheme: DistinguishScheme,
    d: usize,
    rounds: usize,
) -> Result<bool> {
    if rounds == 0 {
        return Err(Error::validation("rounds must be >= 1".to_string()));
    }
    let state = |g: &Graph| -> Result<WlState> {
        let init = match scheme {
            DistinguishScheme::Anonymous => init_anonymous(g.num_nodes()),
            DistinguishScheme::LocalUid => {
                let (c, _) = crate::coloring::greedy_dhop_unique(g, d)?;
                init_colored(&c)
            }
        };
        wl_hash(g, &init, rounds)
    };
    Ok(state(g1)?.graph_hash != state(g2)?.graph_hash)
}

// ---------------------------------------------------------------------------
// JSON report format
// ---------------------------------------------------------------------------

pub const WL_SCHEMA: &str = "dhopc.wl/1";

#[derive(Debug, Serialize)]
pub struct WlReport {
    pub schema: &'static str,
    pub rounds: usize,
    pub graph_hash: String,
    pub node_hashes: Vec<String>,
}

impl WlReport {
    pub fn from_state(s: &WlState) -> Self {
        WlReport {
            schema: WL_SCHEMA,
            rounds: s.round,
            graph_hash: format!("{:016x}", s.graph_hash),
            node_hashes: s.node_hashes.iter().map(|h| format!("{h:016x}")).collect(),
        }
    }
}
