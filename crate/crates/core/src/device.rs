//! Circuit and device descriptions feeding the error-rate estimate.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Resource summary of a transpiled circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitProfile {
    n_qubits: usize,
    circuit_time_s: f64,
    gate_counts: BTreeMap<String, u64>,
}

impl CircuitProfile {
    pub fn new(
        n_qubits: usize,
        circuit_time_s: f64,
        gate_counts: impl IntoIterator<Item = (String, u64)>,
    ) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidInput(
                "profile needs at least one qubit".into(),
            ));
        }
        if !(circuit_time_s.is_finite() && circuit_time_s >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "circuit time must be a non-negative number of seconds, got {circuit_time_s}"
            )));
        }
        Ok(Self {
            n_qubits,
            circuit_time_s,
            gate_counts: gate_counts.into_iter().collect(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn circuit_time_s(&self) -> f64 {
        self.circuit_time_s
    }

    pub fn gate_counts(&self) -> &BTreeMap<String, u64> {
        &self.gate_counts
    }
}

/// Per-qubit coherence times and per-gate error rates of a device.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviceCalibration {
    t1_s: Vec<f64>,
    t2_s: Vec<f64>,
    gate_error: BTreeMap<String, f64>,
}

impl DeviceCalibration {
    pub fn new(
        t1_s: Vec<f64>,
        t2_s: Vec<f64>,
        gate_error: impl IntoIterator<Item = (String, f64)>,
    ) -> Result<Self> {
        if t1_s.is_empty() || t1_s.len() != t2_s.len() {
            return Err(Error::InvalidInput(format!(
                "calibration needs matching non-empty T1/T2 lists, got {} and {}",
                t1_s.len(),
                t2_s.len()
            )));
        }
        for (q, (&t1, &t2)) in t1_s.iter().zip(&t2_s).enumerate() {
            if !(t1.is_finite() && t1 > 0.0 && t2.is_finite() && t2 > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "qubit {q}: T1/T2 must be positive, got {t1}/{t2}"
                )));
            }
        }
        let gate_error: BTreeMap<String, f64> = gate_error.into_iter().collect();
        for (name, &e) in &gate_error {
            if !(0.0..1.0).contains(&e) {
                return Err(Error::InvalidInput(format!(
                    "gate {name:?}: error rate must lie in [0, 1), got {e}"
                )));
            }
        }
        Ok(Self {
            t1_s,
            t2_s,
            gate_error,
        })
    }

    /// Calibration where every qubit shares the same T1 and T2.
    pub fn homogeneous(
        n_qubits: usize,
        t1_s: f64,
        t2_s: f64,
        gate_error: impl IntoIterator<Item = (String, f64)>,
    ) -> Result<Self> {
        Self::new(vec![t1_s; n_qubits], vec![t2_s; n_qubits], gate_error)
    }

    pub fn n_qubits(&self) -> usize {
        self.t1_s.len()
    }

    pub fn t1_s(&self) -> &[f64] {
        &self.t1_s
    }

    pub fn t2_s(&self) -> &[f64] {
        &self.t2_s
    }

    pub fn gate_error(&self) -> &BTreeMap<String, f64> {
        &self.gate_error
    }
}
