//! Hamming-distance arithmetic and evaluation metrics over outcome histograms.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::histogram::OutcomeHistogram;

/// Number of positions at which two equal-width bit-strings differ.
pub fn hamming_distance(x: &BitString, y: &BitString) -> Result<u32> {
    x.ensure_same_width(y)?;
    Ok((x.bits() ^ y.bits()).count_ones())
}

/// Probability mass bucketed by Hamming distance from a reference string.
#[derive(Debug, Clone, PartialEq)]
pub struct HammingSpectrum {
    reference: BitString,
    bin_mass: Vec<f64>,
}

impl HammingSpectrum {
    /// Wrap precomputed bins; `bins.len()` must be `reference.width() + 1`.
    pub fn from_bins(reference: BitString, bins: Vec<f64>) -> Result<Self> {
        if bins.len() != reference.width() as usize + 1 {
            return Err(Error::InvalidInput(format!(
                "spectrum of width {} needs {} bins, got {}",
                reference.width(),
                reference.width() + 1,
                bins.len()
            )));
        }
        if bins.iter().any(|m| !(m.is_finite() && *m >= 0.0)) {
            return Err(Error::InvalidInput(
                "spectrum bins must be non-negative".into(),
            ));
        }
        Ok(Self {
            reference,
            bin_mass: bins,
        })
    }

    pub fn width(&self) -> u32 {
        self.reference.width()
    }

    pub fn reference(&self) -> BitString {
        self.reference
    }

    pub fn bins(&self) -> &[f64] {
        &self.bin_mass
    }

    pub fn total_mass(&self) -> f64 {
        self.bin_mass.iter().sum()
    }
}

/// Bucket every outcome of `h` by its distance from `reference`.
pub fn spectrum_of(h: &OutcomeHistogram, reference: &BitString) -> Result<HammingSpectrum> {
    h.ensure_width(reference.width())?;
    let mut bins = vec![0.0; reference.width() as usize + 1];
    for (b, count) in h.iter() {
        let d = (b.bits() ^ reference.bits()).count_ones() as usize;
        bins[d] += count;
    }
    let total = h.total_shots();
    bins.iter_mut().for_each(|m| *m /= total);
    Ok(HammingSpectrum {
        reference: *reference,
        bin_mass: bins,
    })
}

/// Mean distance from the reference, `Σ d · mass[d]`.
pub fn expected_hamming_distance(s: &HammingSpectrum) -> f64 {
    s.bin_mass
        .iter()
        .enumerate()
        .map(|(d, m)| d as f64 * m)
        .sum()
}

/// Classical fidelity `(Σ √(p_i q_i))²` between two normalized histograms.
///
/// Outcomes missing from one side contribute zero.
pub fn fidelity(p: &OutcomeHistogram, q: &OutcomeHistogram) -> Result<f64> {
    p.ensure_width(q.width())?;
    let overlap: f64 = p
        .probabilities()
        .map(|(b, pi)| (pi * q.probability(&b)).sqrt())
        .sum();
    Ok((overlap * overlap).clamp(0.0, 1.0))
}

/// Hellinger distance `√(1 − Σ √(a_d b_d))` between two spectra.
pub fn hellinger_distance(a: &HammingSpectrum, b: &HammingSpectrum) -> Result<f64> {
    hellinger_bins(a.bins(), b.bins())
}

/// Hellinger distance between two normalized bin vectors of equal length.
pub fn hellinger_bins(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "bin vectors differ in length: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let bc: f64 = a.iter().zip(b).map(|(x, y)| (x * y).sqrt()).sum();
    Ok((1.0 - bc).max(0.0).sqrt().min(1.0))
}

/// Probability of a successful trial: the fraction of shots equal to `truth`.
pub fn pst(h: &OutcomeHistogram, truth: &BitString) -> Result<f64> {
    h.ensure_width(truth.width())?;
    Ok(h.probability(truth))
}

/// Shannon entropy in bits, with `0 · log 0 = 0`.
pub fn shannon_entropy(h: &OutcomeHistogram) -> f64 {
    let e: f64 = h
        .probabilities()
        .filter(|&(_, p)| p > 0.0)
        .map(|(_, p)| -p * p.log2())
        .sum();
    e.max(0.0)
}

/// Per-outcome cost used to score optimization results.
#[derive(Clone)]
pub enum CostSpec {
    /// Explicit costs with a fallback for unlisted strings.
    Table {
        costs: HashMap<BitString, f64>,
        default: f64,
    },
    /// Cost computed on demand.
    Function(Arc<dyn Fn(&BitString) -> f64 + Send + Sync>),
}

impl CostSpec {
    pub fn table(costs: impl IntoIterator<Item = (BitString, f64)>, default: f64) -> Self {
        CostSpec::Table {
            costs: costs.into_iter().collect(),
            default,
        }
    }

    pub fn function(f: impl Fn(&BitString) -> f64 + Send + Sync + 'static) -> Self {
        CostSpec::Function(Arc::new(f))
    }

    pub fn cost(&self, b: &BitString) -> f64 {
        match self {
            CostSpec::Table { costs, default } => costs.get(b).copied().unwrap_or(*default),
            CostSpec::Function(f) => f(b),
        }
    }
}

impl fmt::Debug for CostSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostSpec::Table { costs, default } => f
                .debug_struct("Table")
                .field("entries", &costs.len())
                .field("default", default)
                .finish(),
            CostSpec::Function(_) => f.write_str("Function(..)"),
        }
    }
}

/// Expected cost under `h`.
pub fn expected_cost(h: &OutcomeHistogram, cost: &CostSpec) -> f64 {
    h.probabilities().map(|(b, p)| p * cost.cost(&b)).sum()
}

/// Expected cost divided by the (negative) optimum `c_min`.
pub fn cost_ratio(h: &OutcomeHistogram, cost: &CostSpec, c_min: f64) -> Result<f64> {
    if !(c_min.is_finite() && c_min < 0.0) {
        return Err(Error::InvalidInput(format!(
            "c_min must be negative, got {c_min}"
        )));
    }
    Ok(expected_cost(h, cost) / c_min)
}
