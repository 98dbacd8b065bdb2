//! Command-line front end.
//!
//! Every command reads JSON inputs, prints a JSON result on stdout and exits
//! with 0 on success, 2 on a usage or schema error and 3 when inputs are
//! individually valid but inconsistent with each other.

pub mod files;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::bitstring::BitString;
use crate::config::{MitigationConfig, DEFAULT_EPSILON, DEFAULT_ITERATIONS};
use crate::distfit::{compare_models, fit_mle, model_bins, FitFamily, ModelKind, SpectrumModel};
use crate::engine::{mitigate, LambdaSource};
use crate::error::Error;
use crate::histogram::OutcomeHistogram;
use crate::lambda::{estimate_lambda, LambdaEstimate};
use crate::spectrum::{cost_ratio, fidelity, pst, shannon_entropy, spectrum_of, CostSpec};
use crate::synth::sample_shots;
use files::{
    largest_remainder_round, load, real_counts, CalibrationFile, CostFile, CountsFile, Loaded,
    ProfileFile, ScenarioFile,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{file}: {message}")]
    Schema { file: String, message: String },
    #[error("{0}")]
    Consistency(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Schema { .. } => 2,
            CliError::Consistency(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

fn consistency(e: Error) -> CliError {
    match e {
        Error::Format(m) | Error::InvalidInput(m) => CliError::Usage(m),
        other => CliError::Consistency(other.to_string()),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qbeep",
    version,
    about = "Hamming-spectrum error mitigation for measurement histograms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mitigate a counts file and write the corrected counts.
    Mitigate(MitigateArgs),
    /// Print the Poisson rate estimate for a circuit on a device.
    Lambda(LambdaArgs),
    /// Fit and rank distance models for the spectrum around a known truth.
    Fit(FitArgs),
    /// Sample a counts file from a noise scenario.
    Simulate(SimulateArgs),
    /// Compare two counts files.
    Metrics(MetricsArgs),
}

#[derive(Debug, Args)]
pub struct MitigateArgs {
    #[arg(long)]
    pub counts: PathBuf,
    #[arg(long, required_unless_present = "lambda")]
    pub calibration: Option<PathBuf>,
    #[arg(long, required_unless_present = "lambda")]
    pub profile: Option<PathBuf>,
    /// Use this Poisson rate instead of estimating one.
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,
    #[arg(long, default_value_t = DEFAULT_ITERATIONS)]
    pub iterations: usize,
    /// Include the histogram after every iteration in the report.
    #[arg(long)]
    pub snapshots: bool,
    /// Known correct outcome, enables PST and fidelity in the report.
    #[arg(long)]
    pub truth: Option<String>,
    /// Cost table, enables cost ratios in the report.
    #[arg(long)]
    pub cost: Option<PathBuf>,
    /// Mitigated counts file to write.
    #[arg(long)]
    pub out: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LambdaArgs {
    #[arg(long)]
    pub calibration: PathBuf,
    #[arg(long)]
    pub profile: PathBuf,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub counts: PathBuf,
    #[arg(long)]
    pub truth: String,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long)]
    pub shots: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Override the scenario's seed.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long)]
    pub truth: Option<String>,
    #[arg(long)]
    pub cost: Option<PathBuf>,
}

/// Run a parsed command, printing its JSON result to `out`.
pub fn run(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    let value = match cli.command {
        Command::Mitigate(a) => cmd_mitigate(&a)?,
        Command::Lambda(a) => {
            serde_json::to_value(cmd_lambda(&a.calibration, &a.profile)?).unwrap()
        }
        Command::Fit(a) => cmd_fit(&a.counts, &a.truth)?,
        Command::Simulate(a) => cmd_simulate(&a)?,
        Command::Metrics(a) => cmd_metrics(&a)?,
    };
    if !value.is_null() {
        write_json(out, &value)?;
    }
    Ok(())
}

fn write_json(out: &mut impl Write, value: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    writeln!(out, "{text}").map_err(|e| CliError::Io(e.to_string()))
}

fn write_file(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("value serializes");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_counts(path: &Path) -> Result<(OutcomeHistogram, Loaded<CountsFile>), CliError> {
    let loaded: Loaded<CountsFile> = load(path)?;
    let h = loaded.value.to_histogram(&loaded.path)?;
    Ok((h, loaded))
}

fn parse_truth(text: &str, width: u32) -> Result<BitString, CliError> {
    if text.len() != width as usize {
        return Err(CliError::Consistency(format!(
            "truth {text:?} has {} bits but the counts have width {width}",
            text.chars().count()
        )));
    }
    BitString::parse(text, width).map_err(|e| CliError::Usage(e.to_string()))
}

fn load_cost(path: &Path, width: u32) -> Result<((CostSpec, f64), Loaded<CostFile>), CliError> {
    let loaded: Loaded<CostFile> = load(path)?;
    let cost = loaded.value.to_cost(&loaded.path, width)?;
    Ok((cost, loaded))
}

#[derive(Debug, Serialize)]
struct InputDigest {
    role: &'static str,
    path: String,
    sha256: String,
}

impl InputDigest {
    fn of<T>(role: &'static str, l: &Loaded<T>) -> Self {
        Self {
            role,
            path: l.path.clone(),
            sha256: l.sha256.clone(),
        }
    }
}

#[derive(Debug, Default, Serialize)]
pub struct HistogramMetrics {
    pub entropy_bits: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pst: Option<f64>,
    /// Fidelity against the ideal single-outcome distribution of the truth.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity_to_truth: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost_ratio: Option<f64>,
}

fn metrics_of(
    h: &OutcomeHistogram,
    truth: Option<&BitString>,
    cost: Option<&(CostSpec, f64)>,
) -> Result<HistogramMetrics, CliError> {
    let ideal = truth
        .map(|t| OutcomeHistogram::from_entries(t.width(), [(*t, 1.0)]))
        .transpose()
        .map_err(consistency)?;
    Ok(HistogramMetrics {
        entropy_bits: shannon_entropy(h),
        pst: truth.map(|t| pst(h, t)).transpose().map_err(consistency)?,
        fidelity_to_truth: ideal
            .map(|i| fidelity(h, &i))
            .transpose()
            .map_err(consistency)?,
        cost_ratio: cost
            .map(|(c, c_min)| cost_ratio(h, c, *c_min))
            .transpose()
            .map_err(consistency)?,
    })
}

fn ratio(after: Option<f64>, before: Option<f64>) -> Option<f64> {
    match (after, before) {
        (Some(a), Some(b)) if b != 0.0 => Some(a / b),
        _ => None,
    }
}

pub fn cmd_mitigate(a: &MitigateArgs) -> Result<Value, CliError> {
    let (h, counts_file) = load_counts(&a.counts)?;
    let mut inputs = vec![InputDigest::of("counts", &counts_file)];

    let config = MitigationConfig {
        epsilon: a.epsilon,
        iterations: a.iterations,
        lambda_override: a.lambda,
        record_snapshots: a.snapshots,
    };
    config
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;

    let device = match a.lambda {
        Some(_) => None,
        None => {
            let (Some(cal_path), Some(profile_path)) = (&a.calibration, &a.profile) else {
                return Err(CliError::Usage(
                    "--calibration and --profile are required without --lambda".into(),
                ));
            };
            let cal: Loaded<CalibrationFile> = load(cal_path)?;
            let prof: Loaded<ProfileFile> = load(profile_path)?;
            inputs.push(InputDigest::of("calibration", &cal));
            inputs.push(InputDigest::of("profile", &prof));
            Some((
                cal.value.to_calibration(&cal.path)?,
                prof.value.to_profile(&prof.path)?,
            ))
        }
    };
    let source = match &device {
        Some((calibration, profile)) => LambdaSource::Estimate {
            profile,
            calibration,
        },
        None => LambdaSource::Fixed(a.lambda.unwrap_or(0.0)),
    };

    let truth = a
        .truth
        .as_deref()
        .map(|t| parse_truth(t, h.width()))
        .transpose()?;
    let cost = match &a.cost {
        Some(p) => {
            let (c, loaded) = load_cost(p, h.width())?;
            inputs.push(InputDigest::of("cost", &loaded));
            Some(c)
        }
        None => None,
    };

    let (mitigated, report) = mitigate(&h, source, &config).map_err(consistency)?;
    let rounded = largest_remainder_round(&mitigated);
    write_file(
        &a.out,
        &CountsFile::from_integer_counts(h.width(), &rounded),
    )?;

    let before = metrics_of(&h, truth.as_ref(), cost.as_ref())?;
    let after = metrics_of(&mitigated, truth.as_ref(), cost.as_ref())?;
    let mut value = json!({
        "tool": { "name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION") },
        "inputs": inputs,
        "lambda_estimate": report.lambda_estimate,
        "mitigation": {
            "lambda_used": report.lambda_used,
            "epsilon": config.epsilon,
            "iterations": report.iterations,
            "cutoff": report.cutoff,
            "vertex_count": report.vertex_count,
            "edge_count": report.edge_count,
        },
        "metrics": {
            "before": before,
            "after": after,
            "pst_improvement": ratio(after.pst, before.pst),
            "cost_ratio_improvement": ratio(after.cost_ratio, before.cost_ratio),
        },
        "mitigated_counts_real": real_counts(&mitigated),
    });
    if let Some(snaps) = &report.per_iteration_snapshots {
        value["snapshots"] = json!(snaps.iter().map(real_counts).collect::<Vec<_>>());
    }

    match &a.report {
        Some(path) => {
            write_file(path, &value)?;
            Ok(Value::Null)
        }
        None => Ok(value),
    }
}

pub fn cmd_lambda(calibration: &Path, profile: &Path) -> Result<LambdaEstimate, CliError> {
    let cal: Loaded<CalibrationFile> = load(calibration)?;
    let prof: Loaded<ProfileFile> = load(profile)?;
    let cal_value = cal.value.to_calibration(&cal.path)?;
    let prof_value = prof.value.to_profile(&prof.path)?;
    estimate_lambda(&prof_value, &cal_value).map_err(consistency)
}

fn model_entry(m: &SpectrumModel, hellinger: f64) -> Value {
    let params = match m.kind() {
        ModelKind::Poisson { lambda } => json!({ "lambda": lambda }),
        ModelKind::Binomial { p } => json!({ "p": p }),
        ModelKind::Uniform | ModelKind::HammerWeight => json!({}),
    };
    json!({
        "kind": m.kind().name(),
        "params": params,
        "hellinger": hellinger,
        "bins": model_bins(m),
    })
}

pub fn cmd_fit(counts: &Path, truth: &str) -> Result<Value, CliError> {
    let (h, _) = load_counts(counts)?;
    let truth = parse_truth(truth, h.width())?;
    let observed = spectrum_of(&h, &truth).map_err(consistency)?;
    let width = h.width();
    let candidates = [
        fit_mle(FitFamily::Poisson, &observed),
        fit_mle(FitFamily::Binomial, &observed),
        SpectrumModel::uniform(width),
        SpectrumModel::hammer_weight(width),
    ]
    .into_iter()
    .collect::<Result<Vec<_>, _>>()
    .map_err(consistency)?;
    let ranked = compare_models(&observed, &candidates).map_err(consistency)?;
    Ok(json!({
        "truth": truth.to_string(),
        "width": width,
        "observed_bins": observed.bins(),
        "models": ranked.iter().map(|(m, d)| model_entry(m, *d)).collect::<Vec<_>>(),
    }))
}

pub fn cmd_simulate(a: &SimulateArgs) -> Result<Value, CliError> {
    if a.shots == 0 {
        return Err(CliError::Usage("--shots must be at least 1".into()));
    }
    let loaded: Loaded<ScenarioFile> = load(&a.scenario)?;
    let mut scenario = loaded.value.to_scenario(&loaded.path)?;
    if let Some(seed) = a.seed {
        scenario = scenario.with_seed(seed);
    }
    let h = sample_shots(&scenario, a.shots).map_err(consistency)?;
    let ints: BTreeMap<BitString, u64> = h.iter().map(|(b, c)| (b, c.round() as u64)).collect();
    write_file(&a.out, &CountsFile::from_integer_counts(h.width(), &ints))?;
    Ok(json!({
        "scenario": InputDigest::of("scenario", &loaded),
        "seed": scenario.seed(),
        "shots": a.shots,
        "distinct_outcomes": h.len(),
        "out": a.out.display().to_string(),
    }))
}

pub fn cmd_metrics(a: &MetricsArgs) -> Result<Value, CliError> {
    let (ha, _) = load_counts(&a.a)?;
    let (hb, _) = load_counts(&a.b)?;
    if ha.width() != hb.width() {
        return Err(CliError::Consistency(format!(
            "widths differ: {} has {}, {} has {}",
            a.a.display(),
            ha.width(),
            a.b.display(),
            hb.width()
        )));
    }
    let truth = a
        .truth
        .as_deref()
        .map(|t| parse_truth(t, ha.width()))
        .transpose()?;
    let cost = a
        .cost
        .as_ref()
        .map(|p| load_cost(p, ha.width()).map(|(c, _)| c))
        .transpose()?;
    let ma = metrics_of(&ha, truth.as_ref(), cost.as_ref())?;
    let mb = metrics_of(&hb, truth.as_ref(), cost.as_ref())?;
    Ok(json!({
        "fidelity": fidelity(&ha, &hb).map_err(consistency)?,
        "a": ma,
        "b": mb,
        "pst_ratio": ratio(mb.pst, ma.pst),
        "cost_ratio_improvement": ratio(mb.cost_ratio, ma.cost_ratio),
    }))
}
