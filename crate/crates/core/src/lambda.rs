//! Poisson rate estimation from circuit and calibration data.
//!
//! The rate is the expected number of error events per shot:
//!
//! ```text
//! λ = Σ_q (1 − e^{−t/T1_q}) + Σ_q (1 − e^{−t/T2_q}) + Σ_g count_g · error_g
//! ```
//!
//! summed over the first `n_qubits` calibrated qubits and over every basis
//! gate type in the circuit. With a homogeneous device the decay sums reduce
//! to `n_Q (1 − e^{−t/T})`.

use statrs::function::gamma::ln_gamma;

use crate::device::{CircuitProfile, DeviceCalibration};
use crate::error::{Error, Result};

/// A rate estimate together with its three additive contributions.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct LambdaEstimate {
    pub lambda: f64,
    pub decoherence_term: f64,
    pub dephasing_term: f64,
    pub gate_term: f64,
}

pub fn estimate_lambda(
    profile: &CircuitProfile,
    cal: &DeviceCalibration,
) -> Result<LambdaEstimate> {
    let n = profile.n_qubits();
    if n > cal.n_qubits() {
        return Err(Error::QubitCoverage {
            needed: n,
            available: cal.n_qubits(),
        });
    }
    let t = profile.circuit_time_s();
    if t < 0.0 {
        return Err(Error::InvalidInput(format!("negative circuit time {t}")));
    }

    let unknown: Vec<String> = profile
        .gate_counts()
        .keys()
        .filter(|g| !cal.gate_error().contains_key(*g))
        .cloned()
        .collect();
    if !unknown.is_empty() {
        return Err(Error::UnknownGates(unknown));
    }

    let decay = |times: &[f64]| -> f64 { times[..n].iter().map(|&tc| -(-t / tc).exp_m1()).sum() };
    let decoherence_term = decay(cal.t1_s());
    let dephasing_term = decay(cal.t2_s());
    let gate_term = profile
        .gate_counts()
        .iter()
        .map(|(g, &count)| count as f64 * cal.gate_error()[g])
        .sum();

    Ok(LambdaEstimate {
        lambda: decoherence_term + dephasing_term + gate_term,
        decoherence_term,
        dephasing_term,
        gate_term,
    })
}

/// Poisson probability of exactly `k` events at rate `lambda`, evaluated in
/// log space.
pub fn poisson_pmf(lambda: f64, k: u32) -> f64 {
    if lambda <= 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    let k = f64::from(k);
    (-lambda + k * lambda.ln() - ln_gamma(k + 1.0)).exp()
}

/// Largest distance in `0..=width` whose Poisson mass is at least `epsilon`,
/// or 0 when none qualifies.
pub fn cutoff_distance(lambda: f64, epsilon: f64, width: u32) -> u32 {
    (0..=width)
        .rev()
        .find(|&k| poisson_pmf(lambda, k) >= epsilon)
        .unwrap_or(0)
}
