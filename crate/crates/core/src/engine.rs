//! State-graph reclassification.
//!
//! Every observed bit-string becomes a vertex carrying its current count and
//! its initial observed probability. Two vertices at Hamming distance `d` are
//! joined when the Poisson weight `pmf(λ, d)` reaches the threshold ε. Each
//! iteration then moves counts along the edges: vertex A sends
//!
//! ```text
//! count_A · (w / t) · P_B / P_A
//! ```
//!
//! to each neighbour B, where `t` is the 1-based iteration index. Updates are
//! synchronous: all flows of an iteration are computed from the same snapshot
//! of counts, so the result does not depend on vertex order.

use crate::bitstring::BitString;
use crate::config::MitigationConfig;
use crate::device::{CircuitProfile, DeviceCalibration};
use crate::error::{Error, Result};
use crate::histogram::OutcomeHistogram;
use crate::lambda::{cutoff_distance, estimate_lambda, poisson_pmf, LambdaEstimate};

/// Residual negative counts down to this magnitude are treated as rounding.
const CLAMP_TOLERANCE: f64 = 1e-9;

/// Upper bound on cap-resolution passes per iteration.
const MAX_CAP_PASSES: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub bitstring: BitString,
    pub count: f64,
    /// Probability observed at ingestion; never updated.
    pub initial_prob: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub weight: f64,
}

/// Observed outcomes joined by Poisson-weighted Hamming edges.
#[derive(Debug, Clone, PartialEq)]
pub struct StateGraph {
    width: u32,
    total_shots: f64,
    lambda: f64,
    epsilon: f64,
    cutoff: u32,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

/// Per-edge flows of one iteration before any capping.
#[derive(Debug, Clone, PartialEq)]
pub struct RawFlows {
    /// `(a → b, b → a)` for each edge, in edge order.
    pub per_edge: Vec<(f64, f64)>,
    pub outflow: Vec<f64>,
    pub inflow: Vec<f64>,
}

impl RawFlows {
    pub fn total(&self) -> f64 {
        self.per_edge.iter().map(|(f, r)| f.abs() + r.abs()).sum()
    }
}

impl StateGraph {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn total_shots(&self) -> f64 {
        self.total_shots
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Largest distance that may carry an edge.
    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn total_count(&self) -> f64 {
        self.vertices.iter().map(|v| v.count).sum()
    }

    /// Flows each edge would carry at iteration `t` from the current counts.
    pub fn raw_flows(&self, t: usize) -> RawFlows {
        let eta = 1.0 / t.max(1) as f64;
        let n = self.vertices.len();
        let mut outflow = vec![0.0; n];
        let mut inflow = vec![0.0; n];
        let per_edge = self
            .edges
            .iter()
            .map(|e| {
                let (va, vb) = (&self.vertices[e.a], &self.vertices[e.b]);
                let w = e.weight * eta;
                let ab = va.count * w * vb.initial_prob / va.initial_prob;
                let ba = vb.count * w * va.initial_prob / vb.initial_prob;
                outflow[e.a] += ab;
                inflow[e.b] += ab;
                outflow[e.b] += ba;
                inflow[e.a] += ba;
                (ab, ba)
            })
            .collect();
        RawFlows {
            per_edge,
            outflow,
            inflow,
        }
    }

    /// Current counts as a histogram with the original total.
    pub fn to_histogram(&self) -> OutcomeHistogram {
        OutcomeHistogram::from_parts(
            self.width,
            self.vertices.iter().map(|v| (v.bitstring.bits(), v.count)),
            self.total_shots,
        )
    }
}

/// Build the state graph of `h` for rate `lambda` and threshold `epsilon`.
///
/// Only observed strings become vertices, so pairs are enumerated among them
/// rather than over the full neighbourhood of each string.
pub fn build_graph(h: &OutcomeHistogram, lambda: f64, epsilon: f64) -> Result<StateGraph> {
    if h.is_empty() {
        return Err(Error::InvalidInput(
            "cannot build a graph from an empty histogram".into(),
        ));
    }
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "lambda must be non-negative, got {lambda}"
        )));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidInput(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    let width = h.width();
    let total = h.total_shots();
    let vertices: Vec<Vertex> = h
        .iter()
        .filter(|&(_, c)| c > 0.0)
        .map(|(b, c)| Vertex {
            bitstring: b,
            count: c,
            initial_prob: c / total,
        })
        .collect();

    let cutoff = cutoff_distance(lambda, epsilon, width);
    // weight by distance, None where pruned
    let weights: Vec<Option<f64>> = (0..=cutoff)
        .map(|d| {
            let w = poisson_pmf(lambda, d);
            (d >= 1 && w >= epsilon).then_some(w)
        })
        .collect();

    let mut edges = Vec::new();
    if weights.iter().any(Option::is_some) {
        for a in 0..vertices.len() {
            let xa = vertices[a].bitstring.bits();
            for (b, vb) in vertices.iter().enumerate().skip(a + 1) {
                let d = (xa ^ vb.bitstring.bits()).count_ones();
                if let Some(&Some(weight)) = weights.get(d as usize) {
                    edges.push(Edge { a, b, weight });
                }
            }
        }
    }

    Ok(StateGraph {
        width,
        total_shots: total,
        lambda,
        epsilon,
        cutoff,
        vertices,
        edges,
    })
}

/// Apply one synchronous flow update at iteration `t` (1-based).
pub fn iterate_once(g: &mut StateGraph, t: usize) {
    let flows = g.raw_flows(t);
    let n = g.vertices.len();

    let scale = cap_scales(g, &flows);

    let mut delta = vec![0.0; n];
    for (e, &(ab, ba)) in g.edges.iter().zip(&flows.per_edge) {
        let ab = ab * scale[e.a];
        let ba = ba * scale[e.b];
        delta[e.a] += ba - ab;
        delta[e.b] += ab - ba;
    }
    for (v, d) in g.vertices.iter_mut().zip(delta) {
        v.count += d;
        if v.count < 0.0 && v.count >= -CLAMP_TOLERANCE {
            v.count = 0.0;
        }
    }
}

/// Per-vertex outflow scale factors such that no vertex sends more than its
/// count plus the inflow it actually receives.
///
/// Starting from no capping, each pass recomputes every vertex's scale from
/// the inflow delivered under the previous pass's scales. Scales only ever
/// decrease, and for a capped vertex the inflow it receives is smaller than
/// its outflow, so the passes contract to the fixed point.
fn cap_scales(g: &StateGraph, flows: &RawFlows) -> Vec<f64> {
    let n = g.vertices.len();
    let mut scale = vec![1.0; n];
    for _ in 0..MAX_CAP_PASSES {
        let mut inflow = vec![0.0; n];
        for (e, &(ab, ba)) in g.edges.iter().zip(&flows.per_edge) {
            inflow[e.b] += ab * scale[e.a];
            inflow[e.a] += ba * scale[e.b];
        }
        let mut changed = false;
        for v in 0..n {
            let budget = g.vertices[v].count + inflow[v];
            let s = if flows.outflow[v] > budget {
                budget / flows.outflow[v]
            } else {
                1.0
            };
            if s < scale[v] {
                scale[v] = s;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    scale
}

/// Where the Poisson rate comes from.
#[derive(Debug, Clone, Copy)]
pub enum LambdaSource<'a> {
    /// Estimate from circuit and device data.
    Estimate {
        profile: &'a CircuitProfile,
        calibration: &'a DeviceCalibration,
    },
    /// Use a given rate.
    Fixed(f64),
}

/// Summary of a mitigation run.
#[derive(Debug, Clone, PartialEq)]
pub struct MitigationReport {
    pub lambda_used: f64,
    /// Present when the rate was estimated rather than supplied.
    pub lambda_estimate: Option<LambdaEstimate>,
    pub cutoff: u32,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub iterations: usize,
    pub per_iteration_snapshots: Option<Vec<OutcomeHistogram>>,
}

/// Run the full reclassification on `h`.
///
/// `config.lambda_override` takes precedence over `source`.
pub fn mitigate(
    h: &OutcomeHistogram,
    source: LambdaSource<'_>,
    config: &MitigationConfig,
) -> Result<(OutcomeHistogram, MitigationReport)> {
    config.validate()?;
    let (lambda_used, lambda_estimate) = match (config.lambda_override, source) {
        (Some(l), _) | (None, LambdaSource::Fixed(l)) => {
            if !(l.is_finite() && l >= 0.0) {
                return Err(Error::InvalidInput(format!(
                    "lambda must be non-negative, got {l}"
                )));
            }
            (l, None)
        }
        (
            None,
            LambdaSource::Estimate {
                profile,
                calibration,
            },
        ) => {
            let est = estimate_lambda(profile, calibration)?;
            (est.lambda, Some(est))
        }
    };

    let mut graph = build_graph(h, lambda_used, config.epsilon)?;
    let mut snapshots = config.record_snapshots.then(Vec::new);
    for t in 1..=config.iterations {
        iterate_once(&mut graph, t);
        if let Some(s) = snapshots.as_mut() {
            s.push(graph.to_histogram());
        }
    }

    let report = MitigationReport {
        lambda_used,
        lambda_estimate,
        cutoff: graph.cutoff,
        vertex_count: graph.vertices.len(),
        edge_count: graph.edges.len(),
        iterations: config.iterations,
        per_iteration_snapshots: snapshots,
    };
    Ok((graph.to_histogram(), report))
}
