//! Closed-form generalization-gap bound and sample-complexity estimate for a
//! finite, fixed-precision color-conditioned hypothesis class.
//!
//! With parameters stored at `p` bits, a network with one embedding table per
//! color and `d` merge layers has `|C| * theta_emb + d * theta_merge`
//! parameters, so the log class size is `p` times that. The two quantities
//! computed here are
//!
//! ```text
//! gap(N)    = sqrt((p * (|C| * theta_emb + d * theta_merge) + ln(2/delta)) / (2N))
//! samples(eps) = ceil((p * (|C| * theta_emb + d * theta_merge) + ln(2/delta)) / (2 eps^2))
//! ```
//!
//! The logarithm is natural; the sample count is rounded up to an integer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inputs of the bound calculator. Exactly one of `num_samples` / `epsilon`
/// is needed, depending on the direction of the computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundInputs {
    /// Bits of precision per stored parameter.
    pub precision_bits: u64,
    /// Palette size |C|.
    pub num_colors: u64,
    /// Parameters per embedding table.
    pub theta_emb: u64,
    /// Parameters per merge layer.
    pub theta_merge: u64,
    /// Network depth d.
    pub depth: u64,
    /// Confidence parameter in (0, 1).
    pub delta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub num_samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
}

impl BoundInputs {
    pub fn validate(&self) -> Result<()> {
        if self.precision_bits == 0
            || self.num_colors == 0
            || self.theta_emb == 0
            || self.theta_merge == 0
            || self.depth == 0
        {
            return Err(Error::validation(
                "p, |C|, theta_emb, theta_merge, and depth must all be >= 1".to_string(),
            ));
        }
        if self.delta.is_nan() || self.delta <= 0.0 || self.delta >= 1.0 {
            return Err(Error::validation(format!(
                "delta must be in (0, 1), got {}",
                self.delta
            )));
        }
        Ok(())
    }

    /// Total parameter count `|C| * theta_emb + d * theta_merge`.
    pub fn total_params(&self) -> u128 {
        self.num_colors as u128 * self.theta_emb as u128
            + self.depth as u128 * self.theta_merge as u128
    }

    /// `p * total_params + ln(2/delta)`, the log class size plus confidence term.
    fn numerator(&self) -> f64 {
        let log_class_size = self.precision_bits as u128 * self.total_params();
        log_class_size as f64 + (2.0 / self.delta).ln()
    }
}

/// High-probability bound on |L(h) - Lhat(h)| for `num_samples` training draws.
pub fn gen_gap_bound(inputs: &BoundInputs) -> Result<f64> {
    inputs.validate()?;
    let n = inputs
        .num_samples
        .ok_or_else(|| Error::validation("num_samples (N) is required".to_string()))?;
    if n == 0 {
        return Err(Error::validation("num_samples must be >= 1".to_string()));
    }
    Ok((inputs.numerator() / (2.0 * n as f64)).sqrt())
}

/// Training-set size sufficient for a generalization gap of at most `epsilon`.
pub fn sample_complexity(inputs: &BoundInputs) -> Result<u64> {
    inputs.validate()?;
    let eps = inputs
        .epsilon
        .ok_or_else(|| Error::validation("epsilon is required".to_string()))?;
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::validation(format!(
            "epsilon must be a positive real, got {eps}"
        )));
    }
    let raw = inputs.numerator() / (2.0 * eps * eps);
    let ceiled = raw.ceil();
    if ceiled.is_nan() || ceiled > u64::MAX as f64 {
        return Err(Error::validation(
            "sample count exceeds the representable range".to_string(),
        ));
    }
    Ok(ceiled as u64)
}
