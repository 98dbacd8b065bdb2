//! JSON file schemas and their conversion to library types.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::CliError;
use crate::bitstring::BitString;
use crate::device::{CircuitProfile, DeviceCalibration};
use crate::error::Error;
use crate::histogram::OutcomeHistogram;
use crate::spectrum::CostSpec;
use crate::synth::NoiseScenario;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountsFile {
    pub width: u32,
    pub shots: u64,
    pub counts: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QubitEntry {
    pub t1_s: f64,
    pub t2_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateEntry {
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrationFile {
    pub qubits: Vec<QubitEntry>,
    pub gates: BTreeMap<String, GateEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileFile {
    pub n_qubits: usize,
    pub circuit_time_s: f64,
    pub gate_counts: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub width: u32,
    pub p_error: f64,
    pub lambda_true: f64,
    pub seed: u64,
    pub true_distribution: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostFile {
    pub c_min: f64,
    pub default: f64,
    pub costs: BTreeMap<String, f64>,
}

/// A parsed input file with its path and content digest.
#[derive(Debug, Clone)]
pub struct Loaded<T> {
    pub value: T,
    pub path: String,
    pub sha256: String,
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<Loaded<T>, CliError> {
    let name = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|e| CliError::Schema {
        file: name.clone(),
        message: format!("cannot read: {e}"),
    })?;
    let value = serde_json::from_slice(&bytes).map_err(|e| CliError::Schema {
        file: name.clone(),
        message: e.to_string(),
    })?;
    Ok(Loaded {
        value,
        path: name,
        sha256: hex::encode(Sha256::digest(&bytes)),
    })
}

fn schema(file: &str, message: impl Into<String>) -> CliError {
    CliError::Schema {
        file: file.to_string(),
        message: message.into(),
    }
}

/// Map a library error raised while validating `file`.
fn classify(file: &str, e: Error) -> CliError {
    match e {
        Error::Format(m) | Error::InvalidInput(m) => schema(file, m),
        other => CliError::Consistency(format!("{file}: {other}")),
    }
}

/// Parse a bit-string key; wrong length is a consistency error naming the
/// key, bad characters a schema error.
fn parse_key(file: &str, key: &str, width: u32) -> Result<BitString, CliError> {
    if key.len() != width as usize {
        return Err(CliError::Consistency(format!(
            "{file}: key {key:?} has {} bits but width is {width}",
            key.chars().count()
        )));
    }
    BitString::parse(key, width).map_err(|e| classify(file, e))
}

impl CountsFile {
    pub fn to_histogram(&self, file: &str) -> Result<OutcomeHistogram, CliError> {
        crate::bitstring::check_width(self.width)
            .map_err(|e| schema(file, format!("field `width`: {e}")))?;
        let mut entries = Vec::with_capacity(self.counts.len());
        let mut sum = 0u64;
        for (key, &count) in &self.counts {
            let b = parse_key(file, key, self.width)?;
            sum += count;
            if count > 0 {
                entries.push((b, count as f64));
            }
        }
        if entries.is_empty() {
            return Err(schema(file, "field `counts`: no positive counts"));
        }
        if sum != self.shots {
            return Err(CliError::Consistency(format!(
                "{file}: field `shots` is {} but counts sum to {sum}",
                self.shots
            )));
        }
        OutcomeHistogram::from_entries(self.width, entries).map_err(|e| classify(file, e))
    }

    pub fn from_integer_counts(width: u32, counts: &BTreeMap<BitString, u64>) -> Self {
        let counts: BTreeMap<String, u64> = counts
            .iter()
            .filter(|&(_, &c)| c > 0)
            .map(|(b, &c)| (b.to_string(), c))
            .collect();
        Self {
            width,
            shots: counts.values().sum(),
            counts,
        }
    }
}

impl CalibrationFile {
    pub fn to_calibration(&self, file: &str) -> Result<DeviceCalibration, CliError> {
        DeviceCalibration::new(
            self.qubits.iter().map(|q| q.t1_s).collect(),
            self.qubits.iter().map(|q| q.t2_s).collect(),
            self.gates.iter().map(|(g, e)| (g.clone(), e.error)),
        )
        .map_err(|e| classify(file, e))
    }
}

impl ProfileFile {
    pub fn to_profile(&self, file: &str) -> Result<CircuitProfile, CliError> {
        CircuitProfile::new(
            self.n_qubits,
            self.circuit_time_s,
            self.gate_counts.iter().map(|(g, &c)| (g.clone(), c)),
        )
        .map_err(|e| classify(file, e))
    }
}

impl ScenarioFile {
    pub fn to_scenario(&self, file: &str) -> Result<NoiseScenario, CliError> {
        crate::bitstring::check_width(self.width)
            .map_err(|e| schema(file, format!("field `width`: {e}")))?;
        let dist = self
            .true_distribution
            .iter()
            .map(|(k, &p)| Ok((parse_key(file, k, self.width)?, p)))
            .collect::<Result<Vec<_>, CliError>>()?;
        NoiseScenario::new(self.width, dist, self.p_error, self.lambda_true, self.seed)
            .map_err(|e| classify(file, e))
    }
}

impl CostFile {
    /// Cost table plus the (negative) optimum.
    pub fn to_cost(&self, file: &str, width: u32) -> Result<(CostSpec, f64), CliError> {
        if !(self.c_min.is_finite() && self.c_min < 0.0) {
            return Err(schema(
                file,
                format!("field `c_min` must be negative, got {}", self.c_min),
            ));
        }
        let costs = self
            .costs
            .iter()
            .map(|(k, &c)| Ok((parse_key(file, k, width)?, c)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok((CostSpec::table(costs, self.default), self.c_min))
    }
}

/// Round real counts to integers whose sum is exactly the rounded total.
///
/// Each count is floored, then the missing units go to the largest
/// fractional remainders, ties to the smaller bit-string.
pub fn largest_remainder_round(h: &OutcomeHistogram) -> BTreeMap<BitString, u64> {
    let total = h.total_shots().round() as u64;
    let mut floors: Vec<(BitString, u64, f64)> = h
        .iter()
        .map(|(b, c)| {
            let f = c.max(0.0).floor();
            (b, f as u64, c - f)
        })
        .collect();
    let assigned: u64 = floors.iter().map(|f| f.1).sum();
    let mut missing = total.saturating_sub(assigned) as usize;

    let mut order: Vec<usize> = (0..floors.len()).collect();
    order.sort_by(|&i, &j| {
        floors[j]
            .2
            .partial_cmp(&floors[i].2)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(floors[i].0.cmp(&floors[j].0))
    });
    // more units missing than entries only happens through gross rounding drift
    while missing > 0 {
        for &i in &order {
            if missing == 0 {
                break;
            }
            floors[i].1 += 1;
            missing -= 1;
        }
    }
    floors.into_iter().map(|(b, c, _)| (b, c)).collect()
}

pub fn real_counts(h: &OutcomeHistogram) -> BTreeMap<String, f64> {
    h.iter().map(|(b, c)| (b.to_string(), c)).collect()
}
