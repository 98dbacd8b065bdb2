//! Cost ratio of a QAOA-style MaxCut output before and after mitigation.
//!
//! The ideal output concentrates on the two optimal cuts of a 6-node ring.
//! Noise spreads shots onto worse cuts; mitigation pulls them back, which
//! shows up as a higher expected cut relative to the optimum.
//!
//! Run with: cargo run --example qaoa_cost_ratio

use qbeep::{
    cost_ratio, fidelity, mitigate, sample_shots, BitString, CostSpec, LambdaSource,
    MitigationConfig, NoiseScenario, OutcomeHistogram,
};

const N: u32 = 6;

fn cut_cost(b: &BitString) -> f64 {
    // negated number of cut ring edges, so the optimum is the minimum
    -((0..N).filter(|&i| b.bit(i) != b.bit((i + 1) % N)).count() as f64)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let optimal = [
        BitString::parse("010101", N)?,
        BitString::parse("101010", N)?,
    ];
    let ideal = OutcomeHistogram::from_entries(N, optimal.map(|b| (b, 0.5)))?;
    let scenario = NoiseScenario::new(N, optimal.map(|b| (b, 0.5)), 0.55, 1.2, 99)?;
    let noisy = sample_shots(&scenario, 8192)?;
    let (mitigated, _) = mitigate(
        &noisy,
        LambdaSource::Fixed(1.2),
        &MitigationConfig::default(),
    )?;

    let cost = CostSpec::function(cut_cost);
    let c_min = -f64::from(N);
    let (before, after) = (
        cost_ratio(&noisy, &cost, c_min)?,
        cost_ratio(&mitigated, &cost, c_min)?,
    );
    println!(
        "cost ratio   {before:.3} -> {after:.3}  ({:.2}x)",
        after / before
    );
    println!(
        "fidelity     {:.3} -> {:.3}",
        fidelity(&noisy, &ideal)?,
        fidelity(&mitigated, &ideal)?
    );
    Ok(())
}
