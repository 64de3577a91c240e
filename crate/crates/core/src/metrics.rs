//! Prediction-quality metrics: Top-m% error with permutation alignment inside
//! caller-supplied symmetry orbits, and mean squared error.
//!
//! The Top-m% error first aligns the ground truth to the prediction by the
//! L1-cheapest permutation, restricted to permuting indices within each orbit
//! block (identity when no orbits are given). Blocks are independent under
//! L1, so each is solved by exhaustive search, capped at block size 8. Among
//! equal-cost permutations the lexicographically smallest wins, which makes
//! the metric deterministic. It then rounds predictions half-away-from-zero,
//! keeps the floor(n * m / 100) best-predicted indices (at least one, ties by
//! ascending index), and sums their absolute errors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ground truth and prediction, with optional symmetry-orbit blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionPair {
    pub truth: Vec<f64>,
    pub predicted: Vec<f64>,
    pub orbits: Option<Vec<Vec<usize>>>,
}

/// Largest orbit block the exhaustive permutation search will accept.
pub const DEFAULT_ORBIT_CAP: usize = 8;

impl SolutionPair {
    pub fn validate(&self) -> Result<()> {
        if self.truth.len() != self.predicted.len() {
            return Err(Error::validation(format!(
                "y has {} entries, yhat has {}",
                self.truth.len(),
                self.predicted.len()
            )));
        }
        if self.truth.is_empty() {
            return Err(Error::validation("empty solution vectors".to_string()));
        }
        if let Some(blocks) = &self.orbits {
            let n = self.truth.len();
            let mut seen = vec![false; n];
            for block in blocks {
                for &i in block {
                    if i >= n {
                        return Err(Error::validation(format!("orbit index {i} out of range")));
                    }
                    if seen[i] {
                        return Err(Error::validation(format!("orbit index {i} repeats")));
                    }
                    seen[i] = true;
                }
            }
            if !seen.iter().all(|&s| s) {
                return Err(Error::validation(
                    "orbit blocks must cover every index".to_string(),
                ));
            }
        }
        Ok(())
    }
}

fn round_half_away(x: f64) -> f64 {
    x.round()
}

/// Lexicographic permutation enumeration over `items`, calling `f` with each
/// arrangement. Plain recursion keeps the visit order lexicographic, which
/// the tie-break rule depends on.
fn for_each_permutation(items: &[usize], f: &mut impl FnMut(&[usize])) {
    let mut current = Vec::with_capacity(items.len());
    let mut used = vec![false; items.len()];
    fn rec(
        items: &[usize],
        used: &mut [bool],
        current: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if current.len() == items.len() {
            f(current);
            return;
        }
        for i in 0..items.len() {
            if !used[i] {
                used[i] = true;
                current.push(items[i]);
                rec(items, used, current, f);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(items, &mut used, &mut current, f);
}

/// Aligns `truth` to `predicted` within each orbit block: for block positions
/// `p_0 < p_1 < ...`, chooses the assignment of truth values to positions
/// minimizing the L1 distance to the predictions, lexicographically first on
/// ties. Returns the aligned truth vector.
fn align_within_orbits(pair: &SolutionPair, cap: usize) -> Result<Vec<f64>> {
    let mut aligned = pair.truth.clone();
    let Some(blocks) = &pair.orbits else {
        return Ok(aligned);
    };
    for block in blocks {
        if block.len() <= 1 {
            continue;
        }
        if block.len() > cap {
            return Err(Error::Complexity(format!(
                "orbit block of size {} exceeds the brute-force cap {cap}",
                block.len()
            )));
        }
        let mut positions = block.clone();
        positions.sort_unstable();
        let source_order = positions.clone();
        let mut best_cost = f64::INFINITY;
        let mut best: Vec<usize> = Vec::new();
        for_each_permutation(&source_order, &mut |arrangement| {
            let cost: f64 = positions
                .iter()
                .zip(arrangement)
                .map(|(&pos, &src)| (pair.predicted[pos] - pair.truth[src]).abs())
                .sum();
            if cost < best_cost {
                best_cost = cost;
                best = arrangement.to_vec();
            }
        });
        for (&pos, &src) in positions.iter().zip(&best) {
            aligned[pos] = pair.truth[src];
        }
    }
    Ok(aligned)
}

/// Top-m% error with the default orbit-search cap.
pub fn top_m_error(pair: &SolutionPair, m: f64) -> Result<f64> {
    top_m_error_with_cap(pair, m, DEFAULT_ORBIT_CAP)
}

/// Top-m% error: sum of `|Round(yhat_i) - ytilde_i|` over the best-predicted
/// floor(n * m / 100) indices (at least one), after orbit alignment.
pub fn top_m_error_with_cap(pair: &SolutionPair, m: f64, cap: usize) -> Result<f64> {
    if !(m > 0.0 && m <= 100.0) {
        return Err(Error::validation(format!("m must be in (0, 100], got {m}")));
    }
    pair.validate()?;
    let aligned = align_within_orbits(pair, cap)?;
    let n = pair.truth.len();
    let count = (((n as f64) * m / 100.0).floor() as usize).max(1);

    let mut indexed: Vec<(f64, usize)> = pair
        .predicted
        .iter()
        .zip(&aligned)
        .enumerate()
        .map(|(i, (&yh, &yt))| ((round_half_away(yh) - yt).abs(), i))
        .collect();
    indexed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(indexed.iter().take(count).map(|&(diff, _)| diff).sum())
}

/// Mean squared error. The squared differences are summed in sorted order,
/// so jointly permuting both vectors cannot move the result by an ulp.
pub fn mse(truth: &[f64], predicted: &[f64]) -> Result<f64> {
    if truth.len() != predicted.len() {
        return Err(Error::validation(format!(
            "y has {} entries, yhat has {}",
            truth.len(),
            predicted.len()
        )));
    }
    if truth.is_empty() {
        return Err(Error::validation("empty solution vectors".to_string()));
    }
    let mut sq: Vec<f64> = truth
        .iter()
        .zip(predicted)
        .map(|(a, b)| (a - b) * (a - b))
        .collect();
    sq.sort_by(|a, b| a.total_cmp(b));
    Ok(sq.iter().sum::<f64>() / truth.len() as f64)
}

// ---------------------------------------------------------------------------
// JSON file format
// ---------------------------------------------------------------------------

pub const SOLUTIONS_SCHEMA: &str = "dhopc.solutions/1";

#[derive(Debug, Serialize, Deserialize)]
pub struct SolutionFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub y: Vec<f64>,
    pub yhat: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbits: Option<Vec<Vec<u64>>>,
}

impl SolutionFile {
    pub fn into_pair(self) -> Result<SolutionPair> {
        crate::io::check_schema(self.schema.as_deref(), SOLUTIONS_SCHEMA)?;
        let pair = SolutionPair {
            truth: self.y,
            predicted: self.yhat,
            orbits: self.orbits.map(|bs| {
                bs.into_iter()
                    .map(|b| b.into_iter().map(|i| i as usize).collect())
                    .collect()
            }),
        };
        pair.validate()?;
        Ok(pair)
    }
}

pub fn parse_solutions(text: &str) -> Result<SolutionPair> {
    let file: SolutionFile =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("solution file: {e}")))?;
    file.into_pair()
}
