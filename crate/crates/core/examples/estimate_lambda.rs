//! Estimating the error rate λ from device calibration data.
//!
//! λ adds one decay term per qubit for T1 and for T2 over the circuit
//! duration, plus the summed error rates of every gate executed. The cutoff
//! then tells the engine how far apart two outcomes may be and still
//! exchange counts.
//!
//! Run with: cargo run --example estimate_lambda

use qbeep::{cutoff_distance, estimate_lambda, poisson_pmf, CircuitProfile, DeviceCalibration};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let calibration = DeviceCalibration::new(
        vec![112e-6, 95e-6, 130e-6, 88e-6, 101e-6, 120e-6],
        vec![80e-6, 60e-6, 140e-6, 70e-6, 90e-6, 110e-6],
        [
            ("sx".to_string(), 3e-4),
            ("x".to_string(), 3e-4),
            ("cx".to_string(), 1.1e-2),
            ("measure".to_string(), 2e-2),
        ],
    )?;

    // a 5-qubit circuit: 22 CNOTs, a handful of single-qubit gates, 5 measurements
    let profile = CircuitProfile::new(
        5,
        3.2e-6,
        [
            ("cx".to_string(), 22),
            ("sx".to_string(), 14),
            ("x".to_string(), 3),
            ("measure".to_string(), 5),
        ],
    )?;

    let est = estimate_lambda(&profile, &calibration)?;
    println!("T1 decay   {:.4}", est.decoherence_term);
    println!("T2 decay   {:.4}", est.dephasing_term);
    println!("gate error {:.4}", est.gate_term);
    println!("λ          {:.4}", est.lambda);

    println!("\nPoisson weight by Hamming distance:");
    for d in 0..=5 {
        println!("  d={d}  {:.4}", poisson_pmf(est.lambda, d));
    }
    for eps in [0.01, 0.05, 0.2] {
        println!(
            "cutoff at ε={eps:<4} -> {}",
            cutoff_distance(est.lambda, eps, 5)
        );
    }
    Ok(())
}
