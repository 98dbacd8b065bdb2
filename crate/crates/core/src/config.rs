use crate::error::{Error, Result};

pub const DEFAULT_EPSILON: f64 = 0.05;
pub const DEFAULT_ITERATIONS: usize = 20;

/// Tuning knobs for a mitigation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MitigationConfig {
    /// Edges whose Poisson weight falls below this threshold are pruned.
    pub epsilon: f64,
    /// Number of flow updates.
    pub iterations: usize,
    /// Use this rate instead of estimating one from calibration data.
    pub lambda_override: Option<f64>,
    /// Keep a histogram after each iteration in the report.
    pub record_snapshots: bool,
}

impl Default for MitigationConfig {
    fn default() -> Self {
        Self {
            epsilon: DEFAULT_EPSILON,
            iterations: DEFAULT_ITERATIONS,
            lambda_override: None,
            record_snapshots: false,
        }
    }
}

impl MitigationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidInput(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidInput("iterations must be at least 1".into()));
        }
        if let Some(l) = self.lambda_override {
            if !(l.is_finite() && l >= 0.0) {
                return Err(Error::InvalidInput(format!(
                    "lambda override must be non-negative, got {l}"
                )));
            }
        }
        Ok(())
    }
}
