use std::collections::BTreeMap;

use crate::bitstring::{check_width, BitString};
use crate::error::{Error, Result};

/// Observation counts per bit-string.
///
/// Counts are real-valued because mitigation moves fractional mass between
/// outcomes. `total_shots` is fixed when the histogram is built and every
/// update must preserve it.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeHistogram {
    width: u32,
    counts: BTreeMap<u64, f64>,
    total_shots: f64,
}

impl OutcomeHistogram {
    /// Build from textual `(bit-string, count)` pairs, summing duplicates.
    pub fn from_counts<S, I>(pairs: I, width: u32) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (S, f64)>,
    {
        check_width(width)?;
        let mut entries = Vec::new();
        for (text, count) in pairs {
            let text = text.as_ref();
            if text.len() != width as usize {
                return Err(Error::WidthMismatch {
                    expected: width,
                    found: text.len() as u32,
                });
            }
            entries.push((BitString::parse(text, width)?, count));
        }
        Self::from_entries(width, entries)
    }

    /// Build from already-parsed entries, summing duplicates.
    pub fn from_entries<I>(width: u32, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BitString, f64)>,
    {
        check_width(width)?;
        let mut counts = BTreeMap::new();
        for (b, count) in entries {
            if b.width() != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    found: b.width(),
                });
            }
            if !(count.is_finite() && count > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "count for {b} must be positive, got {count}"
                )));
            }
            *counts.entry(b.bits()).or_insert(0.0) += count;
        }
        if counts.is_empty() {
            return Err(Error::InvalidInput("histogram has no entries".into()));
        }
        let total_shots = counts.values().sum();
        Ok(Self {
            width,
            counts,
            total_shots,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn total_shots(&self) -> f64 {
        self.total_shots
    }

    /// Number of outcomes with a nonzero count.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Count for `b`, zero when unobserved or of a different width.
    pub fn count(&self, b: &BitString) -> f64 {
        if b.width() != self.width {
            return 0.0;
        }
        self.counts.get(&b.bits()).copied().unwrap_or(0.0)
    }

    pub fn probability(&self, b: &BitString) -> f64 {
        self.count(b) / self.total_shots
    }

    /// Entries in ascending bit order.
    pub fn iter(&self) -> impl Iterator<Item = (BitString, f64)> + '_ {
        let width = self.width;
        self.counts.iter().map(move |(&bits, &count)| {
            (
                BitString::new(width, bits).expect("stored keys fit the width"),
                count,
            )
        })
    }

    /// `(bit-string, probability)` pairs in ascending bit order.
    pub fn probabilities(&self) -> impl Iterator<Item = (BitString, f64)> + '_ {
        let total = self.total_shots;
        self.iter().map(move |(b, c)| (b, c / total))
    }

    /// Assemble from raw words and counts, rescaled to sum to `total_shots`.
    /// Zero counts are dropped.
    pub(crate) fn from_parts(
        width: u32,
        counts: impl IntoIterator<Item = (u64, f64)>,
        total_shots: f64,
    ) -> Self {
        let mut counts: BTreeMap<u64, f64> = counts.into_iter().filter(|&(_, c)| c > 0.0).collect();
        let sum: f64 = counts.values().sum();
        if sum > 0.0 && sum != total_shots {
            let scale = total_shots / sum;
            for c in counts.values_mut() {
                *c *= scale;
            }
        }
        Self {
            width,
            counts,
            total_shots,
        }
    }

    pub(crate) fn ensure_width(&self, width: u32) -> Result<()> {
        if self.width != width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: width,
            });
        }
        Ok(())
    }
}
