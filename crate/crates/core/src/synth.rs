//! Seeded synthetic inputs: Erdős–Rényi random graphs and bin-packing-style
//! ILP instances.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ilp::IlpInstance;
use crate::rng::SplitMix64;

/// G(n, p) sample via geometric edge skipping, so sparse graphs cost time
/// proportional to the edge count rather than n^2.
pub fn er_graph(num_nodes: usize, edge_prob: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::validation(format!(
            "edge probability must be in [0, 1], got {edge_prob}"
        )));
    }
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    if edge_prob > 0.0 {
        if edge_prob >= 1.0 {
            for v in 1..num_nodes {
                for u in 0..v {
                    edges.push((u, v, 1.0));
                }
            }
        } else {
            let mut rng = SplitMix64::new(seed);
            let log_q = (1.0 - edge_prob).ln();
            let mut v: usize = 1;
            let mut w: i64 = -1;
            while v < num_nodes {
                let r = rng.next_f64();
                let skip = ((1.0 - r).ln() / log_q).floor() as i64;
                w += 1 + skip;
                while v < num_nodes && w >= v as i64 {
                    w -= v as i64;
                    v += 1;
                }
                if v < num_nodes {
                    edges.push((w as usize, v, 1.0));
                }
            }
        }
    }
    Graph::new(num_nodes, edges, None)
}

/// Bin-packing ILP in canonical `Ax <= b` form.
///
/// Variables: assignment x_{ij} (item i to bin j) at index `i * bins + j`,
/// then bin-open y_j at `items * bins + j`. Objective minimizes open bins.
/// Rows 0..items say each item is placed at least once (as `-sum_j x_ij <= -1`);
/// rows items..items+bins cap each bin: `sum_i w_i x_ij - capacity * y_j <= 0`.
/// Item weights are drawn uniformly from [150, 200] against capacity 1000.
/// The default 20 x 20 shape yields 420 variables and 40 constraints.
pub fn binpack_ilp(items: usize, bins: usize, seed: u64) -> Result<IlpInstance> {
    if items == 0 || bins == 0 {
        return Err(Error::validation(
            "items and bins must both be >= 1".to_string(),
        ));
    }
    let capacity = 1000.0;
    let mut rng = SplitMix64::new(seed);
    let weights: Vec<f64> = (0..items)
        .map(|_| 150.0 + rng.next_below(51) as f64)
        .collect();

    let num_vars = items * bins + bins;
    let num_constraints = items + bins;
    let mut objective = vec![0.0; num_vars];
    for j in 0..bins {
        objective[items * bins + j] = 1.0;
    }
    let mut rhs = vec![-1.0; items];
    rhs.extend(std::iter::repeat_n(0.0, bins));

    let mut entries = Vec::with_capacity(items * bins * 2 + bins);
    for i in 0..items {
        for j in 0..bins {
            entries.push((i, i * bins + j, -1.0));
        }
    }
    for j in 0..bins {
        for i in 0..items {
            entries.push((items + j, i * bins + j, weights[i]));
        }
        entries.push((items + j, items * bins + j, -capacity));
    }

    let ilp = IlpInstance {
        num_vars,
        num_constraints,
        objective,
        rhs,
        entries,
        integrality: Some(vec![true; num_vars]),
    };
    ilp.validate()?;
    Ok(ilp)
}
