//! Candidate models for a Hamming spectrum and their comparison.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::lambda::poisson_pmf;
use crate::spectrum::{expected_hamming_distance, hellinger_bins, HammingSpectrum};

/// Distribution family and its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelKind {
    Poisson {
        lambda: f64,
    },
    Binomial {
        p: f64,
    },
    Uniform,
    /// Inverse-distance weighting: no mass at distance 0, mass ∝ 1/d beyond.
    HammerWeight,
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Poisson { .. } => "poisson",
            ModelKind::Binomial { .. } => "binomial",
            ModelKind::Uniform => "uniform",
            ModelKind::HammerWeight => "hammer_weight",
        }
    }
}

/// Families that can be fitted by maximum likelihood.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitFamily {
    Poisson,
    Binomial,
}

/// A distance distribution over `0..=width`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumModel {
    kind: ModelKind,
    width: u32,
}

impl SpectrumModel {
    pub fn new(kind: ModelKind, width: u32) -> Result<Self> {
        crate::bitstring::check_width(width)?;
        match kind {
            ModelKind::Poisson { lambda } if !(lambda.is_finite() && lambda >= 0.0) => {
                return Err(Error::InvalidInput(format!(
                    "poisson rate must be ≥ 0, got {lambda}"
                )))
            }
            ModelKind::Binomial { p } if !(0.0..=1.0).contains(&p) => {
                return Err(Error::InvalidInput(format!(
                    "binomial p must lie in [0, 1], got {p}"
                )))
            }
            _ => {}
        }
        Ok(Self { kind, width })
    }

    pub fn poisson(lambda: f64, width: u32) -> Result<Self> {
        Self::new(ModelKind::Poisson { lambda }, width)
    }

    pub fn binomial(p: f64, width: u32) -> Result<Self> {
        Self::new(ModelKind::Binomial { p }, width)
    }

    pub fn uniform(width: u32) -> Result<Self> {
        Self::new(ModelKind::Uniform, width)
    }

    pub fn hammer_weight(width: u32) -> Result<Self> {
        Self::new(ModelKind::HammerWeight, width)
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn width(&self) -> u32 {
        self.width
    }
}

impl fmt::Display for SpectrumModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ModelKind::Poisson { lambda } => write!(f, "poisson(λ={lambda:.4})"),
            ModelKind::Binomial { p } => write!(f, "binomial(p={p:.4})"),
            k => f.write_str(k.name()),
        }
    }
}

/// Per-distance mass of `m`, truncated to `0..=width` and normalized.
pub fn model_bins(m: &SpectrumModel) -> Vec<f64> {
    let w = m.width;
    let raw: Vec<f64> = match m.kind {
        ModelKind::Poisson { lambda } => (0..=w).map(|d| poisson_pmf(lambda, d)).collect(),
        ModelKind::Binomial { p } => {
            let mut coeff = 1.0;
            (0..=w)
                .map(|d| {
                    if d > 0 {
                        coeff *= f64::from(w - d + 1) / f64::from(d);
                    }
                    coeff * p.powi(d as i32) * (1.0 - p).powi((w - d) as i32)
                })
                .collect()
        }
        ModelKind::Uniform => vec![1.0; w as usize + 1],
        ModelKind::HammerWeight => (0..=w)
            .map(|d| if d == 0 { 0.0 } else { 1.0 / f64::from(d) })
            .collect(),
    };
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

/// Maximum-likelihood fit of `family` to an observed spectrum.
///
/// Both estimators reduce to the spectral mean: `λ̂ = mean` and
/// `p̂ = mean / width`.
pub fn fit_mle(family: FitFamily, observed: &HammingSpectrum) -> Result<SpectrumModel> {
    let total = observed.total_mass();
    if total <= 0.0 {
        return Err(Error::InvalidInput(
            "cannot fit an all-zero spectrum".into(),
        ));
    }
    let mean = expected_hamming_distance(observed) / total;
    let width = observed.width();
    match family {
        FitFamily::Poisson => SpectrumModel::poisson(mean, width),
        FitFamily::Binomial => SpectrumModel::binomial((mean / f64::from(width)).min(1.0), width),
    }
}

/// Score each candidate by Hellinger distance to `observed`, best first.
///
/// Ties are broken by model name.
pub fn compare_models(
    observed: &HammingSpectrum,
    candidates: &[SpectrumModel],
) -> Result<Vec<(SpectrumModel, f64)>> {
    let mut scored = candidates
        .iter()
        .map(|m| {
            if m.width != observed.width() {
                return Err(Error::WidthMismatch {
                    expected: observed.width(),
                    found: m.width,
                });
            }
            Ok((*m, hellinger_bins(observed.bins(), &model_bins(m))?))
        })
        .collect::<Result<Vec<_>>>()?;
    scored.sort_by(|(ma, da), (mb, db)| {
        da.partial_cmp(db)
            .unwrap_or(Ordering::Equal)
            .then_with(|| ma.kind.name().cmp(mb.kind.name()))
    });
    Ok(scored)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitstring::BitString;

    fn spectrum(bins: Vec<f64>) -> HammingSpectrum {
        let w = bins.len() as u32 - 1;
        HammingSpectrum::from_bins(BitString::zeros(w).unwrap(), bins).unwrap()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn bins_examples() {
        assert!(close(
            &model_bins(&SpectrumModel::uniform(4).unwrap()),
            &[0.2; 5]
        ));
        assert!(close(
            &model_bins(&SpectrumModel::binomial(0.5, 2).unwrap()),
            &[0.25, 0.5, 0.25]
        ));
        assert!(close(
            &model_bins(&SpectrumModel::hammer_weight(3).unwrap()),
            &[0.0, 6.0 / 11.0, 3.0 / 11.0, 2.0 / 11.0]
        ));
    }

    #[test]
    fn binomial_degenerate_p() {
        assert!(close(
            &model_bins(&SpectrumModel::binomial(0.0, 3).unwrap()),
            &[1.0, 0.0, 0.0, 0.0]
        ));
        assert!(close(
            &model_bins(&SpectrumModel::binomial(1.0, 3).unwrap()),
            &[0.0, 0.0, 0.0, 1.0]
        ));
    }

    #[test]
    fn poisson_bins_are_truncated_and_renormalized() {
        let bins = model_bins(&SpectrumModel::poisson(2.0, 3).unwrap());
        let z: f64 = (0..=3).map(|k| poisson_pmf(2.0, k)).sum();
        assert!((bins[2] - poisson_pmf(2.0, 2) / z).abs() < 1e-15);
    }

    #[test]
    fn all_models_normalize() {
        for w in 1..=64 {
            for m in [
                SpectrumModel::poisson(0.0, w),
                SpectrumModel::poisson(3.7, w),
                SpectrumModel::binomial(0.13, w),
                SpectrumModel::uniform(w),
                SpectrumModel::hammer_weight(w),
            ] {
                let s: f64 = model_bins(&m.unwrap()).iter().sum();
                assert!((s - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn hammer_weight_strictly_decreasing() {
        let bins = model_bins(&SpectrumModel::hammer_weight(12).unwrap());
        assert!(bins[1..].windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(SpectrumModel::poisson(-1.0, 3).is_err());
        assert!(SpectrumModel::binomial(1.5, 3).is_err());
        assert!(SpectrumModel::uniform(0).is_err());
    }

    #[test]
    fn fit_examples() {
        let m = fit_mle(FitFamily::Poisson, &spectrum(vec![1.0, 0.0, 0.0])).unwrap();
        assert_eq!(m.kind(), ModelKind::Poisson { lambda: 0.0 });

        let s = spectrum(vec![0.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(
            fit_mle(FitFamily::Poisson, &s).unwrap().kind(),
            ModelKind::Poisson { lambda: 1.0 }
        );
        assert_eq!(
            fit_mle(FitFamily::Binomial, &s).unwrap().kind(),
            ModelKind::Binomial { p: 0.25 }
        );

        let s = spectrum(vec![0.5, 0.0, 0.5]);
        assert_eq!(
            fit_mle(FitFamily::Poisson, &s).unwrap().kind(),
            ModelKind::Poisson { lambda: 1.0 }
        );
        assert_eq!(
            fit_mle(FitFamily::Binomial, &s).unwrap().kind(),
            ModelKind::Binomial { p: 0.5 }
        );

        assert!(fit_mle(FitFamily::Poisson, &spectrum(vec![0.0, 0.0])).is_err());
    }

    #[test]
    fn bimodal_fit_matches_numerical_maximizer() {
        // untruncated Poisson log-likelihood for bins [0.5, 0, 0.5]
        let ll = |l: f64| 0.5 * (-l) + 0.5 * (2.0 * l.ln() - l - 2f64.ln());
        let best = golden_max(ll, 1e-6, 10.0);
        assert!((best - 1.0).abs() < 1e-6);
    }

    fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        let g = (5f64.sqrt() - 1.0) / 2.0;
        while hi - lo > 1e-10 {
            let (a, b) = (hi - g * (hi - lo), lo + g * (hi - lo));
            if f(a) < f(b) {
                lo = a;
            } else {
                hi = b;
            }
        }
        (lo + hi) / 2.0
    }

    #[test]
    fn compare_examples() {
        let exact = SpectrumModel::binomial(0.3, 6).unwrap();
        let obs = spectrum(model_bins(&exact));
        let ranked = compare_models(
            &obs,
            &[
                SpectrumModel::uniform(6).unwrap(),
                exact,
                SpectrumModel::hammer_weight(6).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(ranked[0].0, exact);
        assert!(ranked[0].1 < 1e-7);

        let obs = spectrum(model_bins(&SpectrumModel::poisson(2.0, 8).unwrap()));
        let fitted = fit_mle(FitFamily::Poisson, &obs).unwrap();
        let ranked = compare_models(&obs, &[SpectrumModel::uniform(8).unwrap(), fitted]).unwrap();
        assert_eq!(ranked[0].0.kind().name(), "poisson");
        assert!(ranked[0].1 < ranked[1].1);

        let single = compare_models(&obs, &[fitted]).unwrap();
        assert_eq!(single.len(), 1);

        assert!(compare_models(&obs, &[SpectrumModel::uniform(3).unwrap()]).is_err());
    }

    #[test]
    fn ties_break_by_name() {
        let obs = spectrum(vec![0.5, 0.5]);
        // binomial(0.5) and uniform have identical bins at width 1
        let ranked = compare_models(
            &obs,
            &[
                SpectrumModel::uniform(1).unwrap(),
                SpectrumModel::binomial(0.5, 1).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(ranked[0].0.kind().name(), "binomial");
        assert_eq!(ranked[1].0.kind().name(), "uniform");
    }

    #[test]
    fn poisson_beats_hammer_on_distant_peaks() {
        for lambda in [2.0, 2.5, 3.0, 4.0, 5.0] {
            let obs = spectrum(model_bins(&SpectrumModel::poisson(lambda, 12).unwrap()));
            let ranked = compare_models(
                &obs,
                &[
                    SpectrumModel::hammer_weight(12).unwrap(),
                    SpectrumModel::poisson(lambda, 12).unwrap(),
                ],
            )
            .unwrap();
            assert_eq!(ranked[0].0.kind().name(), "poisson", "λ={lambda}");
        }
    }
}
