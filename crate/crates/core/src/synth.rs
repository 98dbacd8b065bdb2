//! Seeded generator of noisy measurement histograms.
//!
//! Each shot draws an ideal outcome from the true distribution. With
//! probability `p_error` the shot is corrupted: a distance `d` is drawn from
//! Poisson(`lambda_true`) restricted to `1..=width`, and `d` distinct bit
//! positions chosen uniformly at random are flipped.
//!
//! The stream is xoshiro256** seeded through SplitMix64 (the reference
//! seeding of that generator). A uniform `u` in `[0, 1)` is `(x >> 11) · 2⁻⁵³`
//! of the next 64-bit output. Every shot consumes, in order:
//!
//! 1. `u` for the ideal outcome, chosen by inverse CDF over the true
//!    distribution in ascending bit order;
//! 2. `u` for the corruption test `u < p_error`;
//! 3. only if corrupted: `u` for the distance by inverse CDF over the
//!    truncated Poisson, then one `u` per flipped bit for a partial
//!    Fisher–Yates shuffle of positions `0..width`, where step `i` swaps
//!    position `i` with `i + ⌊u · (width − i)⌋`.
//!
//! Any implementation following these steps reproduces the same histograms.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::bitstring::{check_width, BitString};
use crate::distfit::{model_bins, SpectrumModel};
use crate::error::{Error, Result};
use crate::histogram::OutcomeHistogram;
use crate::lambda::poisson_pmf;
use crate::spectrum::{hellinger_bins, spectrum_of};

/// A ground-truth distribution plus the noise applied to it.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseScenario {
    width: u32,
    true_distribution: Vec<(BitString, f64)>,
    p_error: f64,
    lambda_true: f64,
    seed: u64,
}

impl NoiseScenario {
    /// The distribution must sum to 1 within 1e-6; it is renormalized exactly.
    pub fn new(
        width: u32,
        true_distribution: impl IntoIterator<Item = (BitString, f64)>,
        p_error: f64,
        lambda_true: f64,
        seed: u64,
    ) -> Result<Self> {
        check_width(width)?;
        if !(0.0..=1.0).contains(&p_error) {
            return Err(Error::InvalidInput(format!(
                "p_error must lie in [0, 1], got {p_error}"
            )));
        }
        if !(lambda_true.is_finite() && lambda_true >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "lambda_true must be non-negative, got {lambda_true}"
            )));
        }
        let mut dist = std::collections::BTreeMap::new();
        for (b, p) in true_distribution {
            if b.width() != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    found: b.width(),
                });
            }
            if !(p.is_finite() && p >= 0.0) {
                return Err(Error::InvalidInput(format!(
                    "probability of {b} must be ≥ 0, got {p}"
                )));
            }
            if p > 0.0 {
                *dist.entry(b).or_insert(0.0) += p;
            }
        }
        let total: f64 = dist.values().sum();
        if dist.is_empty() || (total - 1.0).abs() > 1e-6 {
            return Err(Error::InvalidInput(format!(
                "true distribution must sum to 1, got {total}"
            )));
        }
        Ok(Self {
            width,
            true_distribution: dist.into_iter().map(|(b, p)| (b, p / total)).collect(),
            p_error,
            lambda_true,
            seed,
        })
    }

    /// Scenario whose noiseless output is always `truth`.
    pub fn single_truth(
        truth: BitString,
        p_error: f64,
        lambda_true: f64,
        seed: u64,
    ) -> Result<Self> {
        Self::new(truth.width(), [(truth, 1.0)], p_error, lambda_true, seed)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn true_distribution(&self) -> &[(BitString, f64)] {
        &self.true_distribution
    }

    pub fn p_error(&self) -> f64 {
        self.p_error
    }

    pub fn lambda_true(&self) -> f64 {
        self.lambda_true
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            seed,
            ..self.clone()
        }
    }

    /// The single true outcome, if there is exactly one.
    pub fn truth(&self) -> Option<BitString> {
        match self.true_distribution.as_slice() {
            [(b, _)] => Some(*b),
            _ => None,
        }
    }

    /// Probability of a corruption landing at distance `d`, for `d` in `0..=width`.
    pub fn error_distance_distribution(&self) -> Vec<f64> {
        truncated_distance_pmf(self.lambda_true, self.width)
    }

    /// Expected spectrum around the truth: `(1 − p_error)` at distance 0 and
    /// the truncated Poisson scaled by `p_error` beyond.
    pub fn predicted_spectrum(&self) -> Vec<f64> {
        predicted_spectrum(self.width, self.p_error, self.lambda_true)
    }
}

fn truncated_distance_pmf(lambda: f64, width: u32) -> Vec<f64> {
    let mut pmf: Vec<f64> = (0..=width)
        .map(|d| if d == 0 { 0.0 } else { poisson_pmf(lambda, d) })
        .collect();
    let z: f64 = pmf.iter().sum();
    if z > 0.0 {
        pmf.iter_mut().for_each(|p| *p /= z);
    } else {
        // λ = 0 leaves no mass on 1..=width; a corruption still flips one bit.
        pmf[1] = 1.0;
    }
    pmf
}

fn predicted_spectrum(width: u32, p_error: f64, lambda: f64) -> Vec<f64> {
    let mut bins: Vec<f64> = truncated_distance_pmf(lambda, width)
        .into_iter()
        .map(|p| p * p_error)
        .collect();
    bins[0] = 1.0 - p_error;
    bins
}

struct UniformStream(Xoshiro256StarStar);

impl UniformStream {
    fn new(seed: u64) -> Self {
        Self(Xoshiro256StarStar::seed_from_u64(seed))
    }

    fn next(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn below(&mut self, n: usize) -> usize {
        ((self.next() * n as f64) as usize).min(n - 1)
    }
}

fn inverse_cdf(cdf: &[f64], u: f64) -> usize {
    cdf.iter().position(|&c| u < c).unwrap_or(cdf.len() - 1)
}

fn cumulative(p: impl IntoIterator<Item = f64>) -> Vec<f64> {
    p.into_iter()
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// Draw `n_shots` noisy outcomes from `s`.
pub fn sample_shots(s: &NoiseScenario, n_shots: u64) -> Result<OutcomeHistogram> {
    if n_shots == 0 {
        return Err(Error::InvalidInput("n_shots must be at least 1".into()));
    }
    let width = s.width as usize;
    let ideal_cdf = cumulative(s.true_distribution.iter().map(|&(_, p)| p));
    let distance_cdf = cumulative(s.error_distance_distribution());

    let mut rng = UniformStream::new(s.seed);
    let mut positions: Vec<u32> = (0..s.width).collect();
    let mut counts = std::collections::BTreeMap::<u64, f64>::new();

    for _ in 0..n_shots {
        let ideal = s.true_distribution[inverse_cdf(&ideal_cdf, rng.next())].0;
        let mut outcome = ideal;
        if rng.next() < s.p_error {
            let d = inverse_cdf(&distance_cdf, rng.next());
            positions
                .iter_mut()
                .enumerate()
                .for_each(|(i, p)| *p = i as u32);
            let mut mask = 0u64;
            for i in 0..d {
                let j = i + rng.below(width - i);
                positions.swap(i, j);
                mask |= 1u64 << positions[i];
            }
            outcome = ideal.flipped(mask);
        }
        *counts.entry(outcome.bits()).or_insert(0.0) += 1.0;
    }
    Ok(OutcomeHistogram::from_parts(
        s.width,
        counts,
        n_shots as f64,
    ))
}

/// Hellinger distance between the sampled spectrum around the truth and the
/// scenario's predicted spectrum.
pub fn scenario_spectrum_check(s: &NoiseScenario, n_shots: u64) -> Result<f64> {
    spectrum_check_with_lambda(s, n_shots, s.lambda_true)
}

/// As [`scenario_spectrum_check`], but predicting with `model_lambda` in
/// place of the rate used for sampling.
pub fn spectrum_check_with_lambda(
    s: &NoiseScenario,
    n_shots: u64,
    model_lambda: f64,
) -> Result<f64> {
    let truth = s.truth().ok_or_else(|| {
        Error::InvalidInput("spectrum check needs a single-truth scenario".into())
    })?;
    let observed = spectrum_of(&sample_shots(s, n_shots)?, &truth)?;
    hellinger_bins(
        observed.bins(),
        &predicted_spectrum(s.width, s.p_error, model_lambda),
    )
}

/// Truncated Poisson bins for `lambda`, as used when comparing models.
pub fn poisson_bins(lambda: f64, width: u32) -> Result<Vec<f64>> {
    Ok(model_bins(&SpectrumModel::poisson(lambda, width)?))
}
