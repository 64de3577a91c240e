//! d-hop unique graph coloring and the machinery around it: k-hop
//! neighborhood queries, power graphs, ILP-to-bipartite encoding, identifier
//! feature augmentation, deterministic numeric and WL-hash message passing,
//! LOCAL-model view reconstruction, prediction metrics, and the finite-class
//! generalization-bound calculator.
//!
//! Everything is deterministic: randomized components take explicit seeds,
//! reductions run in fixed order, and file writers emit canonical JSON.

pub mod bound;
pub mod coloring;
pub mod error;
pub mod features;
pub mod graph;
pub mod ilp;
pub mod io;
pub mod local;
pub mod metrics;
pub mod mp;
pub mod rng;
pub mod synth;
pub mod wl;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
