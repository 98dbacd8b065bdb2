//! Mitigating a Bernstein–Vazirani style histogram.
//!
//! A single hidden string is measured with heavy noise: only 40% of shots
//! come back correct, the rest land a Poisson number of bit flips away. The
//! engine moves counts back toward the string that its neighbours point at.
//!
//! Run with: cargo run --example mitigate_bv

use qbeep::{
    mitigate, pst, sample_shots, BitString, LambdaSource, MitigationConfig, NoiseScenario,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let secret = BitString::parse("1011010011", 10)?;
    let scenario = NoiseScenario::single_truth(secret, 0.6, 2.0, 7)?;
    let noisy = sample_shots(&scenario, 4096)?;

    let (mitigated, report) = mitigate(
        &noisy,
        LambdaSource::Fixed(2.0),
        &MitigationConfig::default(),
    )?;

    println!("hidden string     {secret}");
    println!("distinct outcomes {}", noisy.len());
    println!(
        "graph             {} vertices, {} edges, cutoff {}",
        report.vertex_count, report.edge_count, report.cutoff
    );
    let (before, after) = (pst(&noisy, &secret)?, pst(&mitigated, &secret)?);
    println!(
        "PST               {before:.3} -> {after:.3}  ({:.2}x)",
        after / before
    );

    println!("\nmost likely outcomes after mitigation:");
    let mut top: Vec<_> = mitigated.iter().collect();
    top.sort_by(|a, b| b.1.total_cmp(&a.1));
    for (b, c) in top.into_iter().take(5) {
        println!("  {b}  {c:8.1}");
    }
    Ok(())
}
