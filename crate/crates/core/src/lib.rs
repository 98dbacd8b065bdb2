//! Hamming-spectrum error mitigation for quantum measurement histograms.
//!
//! Noisy shots tend to land a Poisson-distributed number of bit flips away
//! from the outcome the circuit intended. This crate estimates that Poisson
//! rate from a circuit profile and device calibration, builds a graph over the
//! observed bit-strings whose edges carry the Poisson weight of their Hamming
//! distance, and iteratively moves counts along those edges towards
//! high-probability outcomes.
//!
//! ```
//! use qbeep::{mitigate, LambdaSource, MitigationConfig, OutcomeHistogram};
//!
//! let raw = OutcomeHistogram::from_counts([("000", 60.0), ("001", 25.0), ("011", 15.0)], 3)?;
//! let (mitigated, report) = mitigate(&raw, LambdaSource::Fixed(1.0), &MitigationConfig::default())?;
//! assert_eq!(report.vertex_count, 3);
//! assert!(mitigated.count(&"000".parse()?) > 60.0);
//! # Ok::<(), qbeep::Error>(())
//! ```

pub mod bitstring;
pub mod cli;
pub mod config;
pub mod device;
pub mod distfit;
pub mod engine;
pub mod error;
pub mod histogram;
pub mod lambda;
pub mod spectrum;
pub mod synth;

pub use bitstring::BitString;
pub use config::MitigationConfig;
pub use device::{CircuitProfile, DeviceCalibration};
pub use distfit::{compare_models, fit_mle, model_bins, ModelKind, SpectrumModel};
pub use engine::{build_graph, iterate_once, mitigate, LambdaSource, MitigationReport, StateGraph};
pub use error::{Error, Result};
pub use histogram::OutcomeHistogram;
pub use lambda::{cutoff_distance, estimate_lambda, poisson_pmf, LambdaEstimate};
pub use spectrum::{
    cost_ratio, expected_hamming_distance, fidelity, hamming_distance, hellinger_distance, pst,
    shannon_entropy, spectrum_of, CostSpec, HammingSpectrum,
};
pub use synth::{sample_shots, scenario_spectrum_check, NoiseScenario};
