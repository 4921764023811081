//! Full-scale matched-aperture OMP experiment: 1000 trials on a 10⁴-point grid.
//! About 15 minutes on one core; run with `cargo test --release -- --ignored`.

use symarray::sensing::{run_experiment, ExperimentConfig};

/// Reference mean RMSE in degrees as (noiseless, 5 dB).
const KMA_TARGET: (f64, f64) = (8.6, 16.2);
const KA_R_TARGET: (f64, f64) = (4.2, 7.9);
const RELATIVE_TOLERANCE: f64 = 0.5;

#[test]
#[ignore = "takes about 15 minutes"]
fn full_scale_rmse() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/full.toml");
    let config = ExperimentConfig::from_toml(&std::fs::read_to_string(path).unwrap()).unwrap();
    let report = run_experiment(&config, Some(1)).unwrap();
    let mut misses = Vec::new();
    for (snr, kma_target, ka_target) in
        [(f64::INFINITY, KMA_TARGET.0, KA_R_TARGET.0), (5.0, KMA_TARGET.1, KA_R_TARGET.1)]
    {
        let kma = report.mean_rmse("KMA", snr).unwrap();
        let ka = report.mean_rmse("KA_R", snr).unwrap();
        println!("SNR {snr} dB: KMA {kma:.2} (target {kma_target}), KA_R {ka:.2} (target {ka_target})");
        assert!(ka < kma, "ordering violated at SNR {snr} dB");
        for (got, target) in [(kma, kma_target), (ka, ka_target)] {
            if ((got - target) / target).abs() > RELATIVE_TOLERANCE {
                misses.push(format!("{got:.2} vs {target} at SNR {snr} dB"));
            }
        }
    }
    assert!(misses.is_empty(), "outside ±50% of target: {}", misses.join(", "));
}
