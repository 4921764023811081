use std::process::{Command, Output};

use serde_json::Value;
use symarray::SensorArray;
use symarray_cli::output::MetricsBlock;

fn symarray(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symarray")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = symarray(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn positions(v: &Value) -> Vec<i64> {
    v["positions"].as_array().unwrap().iter().map(|p| p.as_i64().unwrap()).collect()
}

#[test]
fn generate_cna_matches_construction() {
    let v = json(&["generate", "cna", "--n1", "2", "--n2", "3"]);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(positions(&v), [0, 1, 2, 5, 8, 9, 10]);
    assert_eq!(v["metrics"]["contiguous_dof"], 21);
    assert_eq!(v["metrics"]["redundancy"], "4/3");
    assert_eq!(v["command"][1], "cna");
}

#[test]
fn generate_ka_twenty_sensors() {
    let v = json(&["generate", "ka", "--n1", "1", "--n2", "5", "--n3", "3"]);
    assert_eq!(v["metrics"]["n_sensors"], 20);
    assert_eq!(v["metrics"]["aperture"], 67);
    assert_eq!(v["metrics"]["contiguous_dof"], 135);
}

#[test]
fn single_sensor_ula() {
    let v = json(&["generate", "ula", "--n", "1"]);
    assert_eq!(positions(&v), [0]);
    assert_eq!(v["metrics"]["contiguous_dof"], 1);
    assert_eq!(v["metrics"]["redundancy"], "1");
}

#[test]
fn symmetric_generator() {
    let v = json(&["generate", "symmetric", "--generator", "0 1 3", "--lambda", "2"]);
    assert_eq!(positions(&v), [0, 1, 2, 3, 4, 5]);
    assert_eq!(v["metrics"]["symmetric"], true);
}

#[test]
fn json_metrics_recompute() {
    let v = json(&["optimize", "kma", "--n", "17"]);
    let array = SensorArray::new(positions(&v)).unwrap();
    let recomputed = serde_json::to_value(MetricsBlock::of(&array).unwrap()).unwrap();
    assert_eq!(v["metrics"], recomputed);
}

#[test]
fn optimize_ka_reports_grid_optimum() {
    let v = json(&["optimize", "ka", "--n", "20"]);
    assert_eq!(v["search"]["params"], serde_json::json!({"family": "klove", "n1": 1, "n2": 5, "n3": 3}));
    assert_eq!(v["search"]["aperture"], 67);
    assert_eq!(v["metrics"]["aperture"], 67);
}

#[test]
fn optimize_cna_carries_closed_form_trace() {
    let v = json(&["optimize", "cna", "--n", "7"]);
    assert_eq!(positions(&v), [0, 1, 2, 5, 8, 9, 10]);
    assert!(v["search"]["closed_form"].is_object());
}

#[test]
fn optimize_restricted_mra() {
    let v = json(&["optimize", "mra-restricted", "--n", "8"]);
    assert_eq!(positions(&v), [0, 1, 2, 5, 8, 11, 12, 13]);
    assert_eq!(v["search"]["contiguous_dof"], 27);
}

#[test]
fn kma_fixed_aperture() {
    let v = json(&["optimize", "kma", "--n", "17", "--aperture", "70"]);
    assert_eq!(v["metrics"]["contiguous_dof"], 101);
}

#[test]
fn oversized_mra_is_refused() {
    let out = symarray(&["optimize", "mra", "--n", "20"]);
    assert_eq!(out.status.code(), Some(3));
    let out = symarray(&["optimize", "mra", "--n", "13", "--mra-limit", "12"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["generate", "kma", "--n1", "0", "--n2", "0", "--n3", "1"][..],
        &["generate", "ula", "--n", "0"],
        &["metrics", "--positions", "0 1 1"],
        &["optimize", "cna", "--n", "5", "--aperture", "9"],
        &["optimize", "kma", "--n", "17", "--aperture", "3"],
        &["generate", "bogus"],
    ] {
        assert_eq!(symarray(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn csv_quotes_positions() {
    let out = symarray(&["--format", "csv", "generate", "nested", "--n1", "2", "--n2", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("positions,n_sensors,aperture"));
    assert!(lines.next().unwrap().starts_with("\"0 1 2 5\",4,5,"));
}

#[test]
fn table_two_lists_tied_optima() {
    let out = symarray(&["tables", "--which", "II"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"0 1 2 5 8 11 12 13\",true,27,4,2,3,0.040203…"));
}

const SMALL_CONFIG: &str = r#"
trials = 2
snr_db = [inf, 10.0]

[grid]
points = 181
min_deg = -60.0
max_deg = 60.0

[scene]
scatterers = 3
min_deg = -40.0
max_deg = 40.0

[[arrays]]
name = "CNA"
kind = "cna"
n1 = 2
n2 = 3

[[arrays]]
name = "ULA"
kind = "ula"
n = 7
"#;

#[test]
fn omp_writes_records_and_spectra() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("small.toml");
    let out_csv = dir.path().join("records.csv");
    let spectra = dir.path().join("spectra.json");
    std::fs::write(&config, SMALL_CONFIG).unwrap();
    let run = |seed: &str| {
        let out = symarray(&[
            "omp",
            "--config",
            config.to_str().unwrap(),
            "--seed",
            seed,
            "--out",
            out_csv.to_str().unwrap(),
            "--spectra",
            spectra.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read_to_string(&out_csv).unwrap()
    };
    let first = run("7");
    assert_eq!(first.lines().next(), Some("trial,array,snr_db,rmse_deg"));
    assert_eq!(first.lines().count(), 1 + 2 * 2 * 2);
    assert_eq!(first, run("7"));
    let spectra: Value = serde_json::from_str(&std::fs::read_to_string(&spectra).unwrap()).unwrap();
    assert_eq!(spectra["spectra"].as_array().unwrap().len(), 4);
}

#[test]
fn omp_requires_seed_and_trials() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.toml");
    std::fs::write(&config, SMALL_CONFIG).unwrap();
    let path = config.to_str().unwrap();
    assert_eq!(symarray(&["omp", "--config", path]).status.code(), Some(2));
    std::fs::write(&config, SMALL_CONFIG.replace("trials = 2", "trials = 0")).unwrap();
    assert_eq!(symarray(&["omp", "--config", path, "--seed", "1"]).status.code(), Some(2));
}
