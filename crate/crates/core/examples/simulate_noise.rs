//! Generating synthetic measurement counts.
//!
//! Scenarios are fully determined by their seed, so the same scenario always
//! yields the same histogram. The spectrum check compares the sampled
//! spread of errors against what the scenario predicts.
//!
//! Run with: cargo run --example simulate_noise

use qbeep::synth::spectrum_check_with_lambda;
use qbeep::{sample_shots, scenario_spectrum_check, shannon_entropy, BitString, NoiseScenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let width = 8;
    let a = BitString::parse("00001111", width)?;
    let b = BitString::parse("11110000", width)?;
    let scenario = NoiseScenario::new(width, [(a, 0.5), (b, 0.5)], 0.3, 1.5, 2024)?;

    let h = sample_shots(&scenario, 10_000)?;
    let again = sample_shots(&scenario, 10_000)?;
    let reseeded = sample_shots(&scenario.with_seed(2025), 10_000)?;
    println!("distinct outcomes   {}", h.len());
    println!("entropy             {:.3} bits", shannon_entropy(&h));
    println!("same seed identical {}", h == again);
    println!("new seed identical  {}", h == reseeded);
    println!("count of {a}     {}", h.count(&a));
    println!("count of {b}     {}", h.count(&b));

    let single = NoiseScenario::single_truth(a, 0.8, 2.0, 1)?;
    println!(
        "\nspectrum check, matching λ  {:.4}",
        scenario_spectrum_check(&single, 50_000)?
    );
    println!(
        "spectrum check, λ=5 model   {:.4}",
        spectrum_check_with_lambda(&single, 50_000, 5.0)?
    );
    Ok(())
}
