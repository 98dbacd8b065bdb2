//! Watching the reclassification converge.
//!
//! With snapshots enabled the report keeps the histogram after every
//! iteration. The first full-strength step overshoots; the 1/t damping of
//! later steps shrinks the oscillation around the settled distribution.
//!
//! Run with: cargo run --example iteration_tracking

use qbeep::{
    mitigate, pst, sample_shots, shannon_entropy, BitString, LambdaSource, MitigationConfig,
    NoiseScenario,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let truth = BitString::parse("110011100", 9)?;
    let noisy = sample_shots(&NoiseScenario::single_truth(truth, 0.65, 1.8, 5)?, 4096)?;
    let config = MitigationConfig {
        record_snapshots: true,
        ..MitigationConfig::default()
    };
    let (_, report) = mitigate(&noisy, LambdaSource::Fixed(1.8), &config)?;

    println!(" iter     PST   entropy");
    println!(
        "{:>5}  {:.4}  {:.3}",
        0,
        pst(&noisy, &truth)?,
        shannon_entropy(&noisy)
    );
    for (t, h) in report
        .per_iteration_snapshots
        .unwrap_or_default()
        .iter()
        .enumerate()
    {
        println!(
            "{:>5}  {:.4}  {:.3}",
            t + 1,
            pst(h, &truth)?,
            shannon_entropy(h)
        );
    }
    Ok(())
}
