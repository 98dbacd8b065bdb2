//! Which model explains the Hamming spectrum of a noisy run?
//!
//! The observed mass at each distance from the correct answer is compared
//! with a fitted Poisson, a fitted binomial, a uniform spread and an
//! inverse-distance weighting, ranked by Hellinger distance.
//!
//! Run with: cargo run --example fit_spectrum

use qbeep::distfit::FitFamily;
use qbeep::{
    compare_models, fit_mle, model_bins, sample_shots, spectrum_of, BitString, NoiseScenario,
    SpectrumModel,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let width = 12;
    let truth = BitString::new(width, 0b1010_0110_1100)?;
    let lambda: f64 = 3.0;
    // every shot undergoes the flip process, so distance 0 keeps e^-λ
    let scenario = NoiseScenario::single_truth(truth, -(-lambda).exp_m1(), lambda, 3)?;
    let observed = spectrum_of(&sample_shots(&scenario, 20_000)?, &truth)?;

    let candidates = [
        fit_mle(FitFamily::Poisson, &observed)?,
        fit_mle(FitFamily::Binomial, &observed)?,
        SpectrumModel::uniform(width)?,
        SpectrumModel::hammer_weight(width)?,
    ];

    print!("{:<14}", "observed");
    for m in observed.bins().iter().take(9) {
        print!("{m:6.3}");
    }
    println!();
    for (model, distance) in compare_models(&observed, &candidates)? {
        print!("{:<14}", model.kind().name());
        for m in model_bins(&model).iter().take(9) {
            print!("{m:6.3}");
        }
        println!("   hellinger {distance:.4}   {model}");
    }
    Ok(())
}
