use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn qbeep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbeep"))
        .args(args)
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, value: Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_vec_pretty(&value).unwrap()).unwrap();
    p
}

fn stdout_json(o: &Output) -> Value {
    assert_eq!(
        o.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn calibration(dir: &Path, gates: Value) -> PathBuf {
    let qubits: Vec<Value> = (0..4)
        .map(|_| json!({ "t1_s": 100e-6, "t2_s": 80e-6 }))
        .collect();
    write(dir, "cal.json", json!({ "qubits": qubits, "gates": gates }))
}

fn profile(dir: &Path, n: usize, time: f64, gates: Value) -> PathBuf {
    write(
        dir,
        "profile.json",
        json!({ "n_qubits": n, "circuit_time_s": time, "gate_counts": gates }),
    )
}

fn counts(dir: &Path) -> PathBuf {
    write(
        dir,
        "counts.json",
        json!({ "width": 4, "shots": 1000, "counts": { "1011": 520, "1010": 160, "0011": 150, "1111": 120, "0000": 50 } }),
    )
}

#[test]
fn mitigate_with_device_files() {
    let d = TempDir::new().unwrap();
    let cal = calibration(
        d.path(),
        json!({ "cx": { "error": 0.02 }, "x": { "error": 0.001 } }),
    );
    let prof = profile(d.path(), 4, 2e-6, json!({ "cx": 10, "x": 4 }));
    let out = d.path().join("mitigated.json");
    let o = qbeep(&[
        "mitigate",
        "--counts",
        s(&counts(d.path())),
        "--calibration",
        s(&cal),
        "--profile",
        s(&prof),
        "--truth",
        "1011",
        "--out",
        s(&out),
    ]);
    let report = stdout_json(&o);
    assert_eq!(report["tool"]["name"], "qbeep");
    assert_eq!(report["inputs"].as_array().unwrap().len(), 3);
    assert!(report["mitigation"]["lambda_used"].as_f64().unwrap() > 0.2);
    assert!(report["metrics"]["pst_improvement"].as_f64().unwrap() > 1.0);

    let written: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(written["shots"], 1000);
    let sum: u64 = written["counts"]
        .as_object()
        .unwrap()
        .values()
        .map(|v| v.as_u64().unwrap())
        .sum();
    assert_eq!(sum, 1000);
}

#[test]
fn fixed_lambda_needs_no_device_files() {
    let d = TempDir::new().unwrap();
    let out = d.path().join("m.json");
    let rep = d.path().join("r.json");
    let o = qbeep(&[
        "mitigate",
        "--counts",
        s(&counts(d.path())),
        "--lambda",
        "1.5",
        "--snapshots",
        "--out",
        s(&out),
        "--report",
        s(&rep),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&std::fs::read(&rep).unwrap()).unwrap();
    assert_eq!(report["mitigation"]["lambda_used"], 1.5);
    assert!(report["lambda_estimate"].is_null());
    assert_eq!(report["snapshots"].as_array().unwrap().len(), 20);
}

#[test]
fn missing_device_files_is_usage_error() {
    let d = TempDir::new().unwrap();
    let o = qbeep(&[
        "mitigate",
        "--counts",
        s(&counts(d.path())),
        "--out",
        "x.json",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn wrong_width_key_names_the_key() {
    let d = TempDir::new().unwrap();
    let c = write(
        d.path(),
        "c.json",
        json!({ "width": 4, "shots": 3, "counts": { "0000": 2, "10110": 1 } }),
    );
    let o = qbeep(&[
        "mitigate",
        "--counts",
        s(&c),
        "--lambda",
        "1",
        "--out",
        s(&d.path().join("o.json")),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("10110"));
}

#[test]
fn malformed_json_and_unknown_fields_are_schema_errors() {
    let d = TempDir::new().unwrap();
    let bad = d.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let extra = write(
        d.path(),
        "extra.json",
        json!({ "width": 1, "shots": 1, "counts": { "0": 1 }, "note": 1 }),
    );
    for f in [&bad, &extra] {
        let o = qbeep(&["fit", "--counts", s(f), "--truth", "0"]);
        assert_eq!(o.status.code(), Some(2));
    }
}

#[test]
fn shots_mismatch_is_consistency_error() {
    let d = TempDir::new().unwrap();
    let c = write(
        d.path(),
        "c.json",
        json!({ "width": 2, "shots": 10, "counts": { "00": 3 } }),
    );
    assert_eq!(
        qbeep(&["fit", "--counts", s(&c), "--truth", "00"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn lambda_gate_term() {
    let d = TempDir::new().unwrap();
    let cal = calibration(d.path(), json!({ "cx": { "error": 0.02 } }));
    let prof = profile(d.path(), 2, 0.0, json!({ "cx": 10 }));
    let est = stdout_json(&qbeep(&[
        "lambda",
        "--calibration",
        s(&cal),
        "--profile",
        s(&prof),
    ]));
    assert!((est["lambda"].as_f64().unwrap() - 0.2).abs() < 1e-12);
    assert_eq!(est["decoherence_term"], 0.0);
}

#[test]
fn lambda_without_gates() {
    let d = TempDir::new().unwrap();
    let cal = calibration(d.path(), json!({}));
    let prof = profile(d.path(), 1, 1e-6, json!({}));
    let est = stdout_json(&qbeep(&[
        "lambda",
        "--calibration",
        s(&cal),
        "--profile",
        s(&prof),
    ]));
    let expected = -(-1e-6f64 / 100e-6).exp_m1() - (-1e-6f64 / 80e-6).exp_m1();
    assert!((est["lambda"].as_f64().unwrap() - expected).abs() < 1e-12);
    assert_eq!(est["gate_term"], 0.0);
}

#[test]
fn unknown_gate_and_too_many_qubits_are_consistency_errors() {
    let d = TempDir::new().unwrap();
    let cal = calibration(d.path(), json!({ "cx": { "error": 0.02 } }));
    let prof = profile(d.path(), 2, 1e-6, json!({ "xy": 3 }));
    let o = qbeep(&["lambda", "--calibration", s(&cal), "--profile", s(&prof)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("xy"));

    let prof = profile(d.path(), 5, 1e-6, json!({}));
    assert_eq!(
        qbeep(&["lambda", "--calibration", s(&cal), "--profile", s(&prof)])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn fit_requires_truth_and_ranks_models() {
    let d = TempDir::new().unwrap();
    let c = counts(d.path());
    assert_eq!(qbeep(&["fit", "--counts", s(&c)]).status.code(), Some(2));

    let fit = stdout_json(&qbeep(&["fit", "--counts", s(&c), "--truth", "1011"]));
    let models = fit["models"].as_array().unwrap();
    assert_eq!(models.len(), 4);
    let d: Vec<f64> = models
        .iter()
        .map(|m| m["hellinger"].as_f64().unwrap())
        .collect();
    assert!(d.windows(2).all(|w| w[0] <= w[1]));
    let poisson = models.iter().find(|m| m["kind"] == "poisson").unwrap();
    // mean distance: 0.16 + 0.15 + 0.12 + 0.05·3
    assert!((poisson["params"]["lambda"].as_f64().unwrap() - 0.58).abs() < 1e-12);
}

fn scenario(dir: &Path, p_error: f64) -> PathBuf {
    write(
        dir,
        "scenario.json",
        json!({ "width": 8, "p_error": p_error, "lambda_true": 2.0, "seed": 99,
                "true_distribution": { "10110011": 0.75, "00001111": 0.25 } }),
    )
}

#[test]
fn simulate_is_byte_reproducible() {
    let d = TempDir::new().unwrap();
    let sc = scenario(d.path(), 0.4);
    let (a, b, c) = (
        d.path().join("a.json"),
        d.path().join("b.json"),
        d.path().join("c.json"),
    );
    for out in [&a, &b] {
        stdout_json(&qbeep(&[
            "simulate",
            "--scenario",
            s(&sc),
            "--shots",
            "4096",
            "--out",
            s(out),
        ]));
    }
    stdout_json(&qbeep(&[
        "simulate",
        "--scenario",
        s(&sc),
        "--shots",
        "4096",
        "--out",
        s(&c),
        "--seed",
        "100",
    ]));
    let read = |p: &Path| std::fs::read(p).unwrap();
    assert_eq!(read(&a), read(&b));
    assert_ne!(read(&a), read(&c));
    let v: Value = serde_json::from_slice(&read(&a)).unwrap();
    assert_eq!(v["shots"], 4096);
}

#[test]
fn simulate_without_errors_stays_in_support() {
    let d = TempDir::new().unwrap();
    let sc = scenario(d.path(), 0.0);
    let out = d.path().join("o.json");
    stdout_json(&qbeep(&[
        "simulate",
        "--scenario",
        s(&sc),
        "--shots",
        "1000",
        "--out",
        s(&out),
    ]));
    let v: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    let keys: Vec<&String> = v["counts"].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["00001111", "10110011"]);
}

#[test]
fn simulate_zero_shots_is_usage_error() {
    let d = TempDir::new().unwrap();
    let sc = scenario(d.path(), 0.4);
    let o = qbeep(&[
        "simulate",
        "--scenario",
        s(&sc),
        "--shots",
        "0",
        "--out",
        s(&d.path().join("o.json")),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn metrics_compare_files() {
    let d = TempDir::new().unwrap();
    let a = counts(d.path());
    let same = stdout_json(&qbeep(&["metrics", "--a", s(&a), "--b", s(&a)]));
    assert!((same["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let b = write(
        d.path(),
        "b.json",
        json!({ "width": 4, "shots": 100, "counts": { "1011": 90, "0000": 10 } }),
    );
    let cost = write(
        d.path(),
        "cost.json",
        json!({ "c_min": -4.0, "default": 0.0, "costs": { "1011": -4.0, "1010": -2.0, "0011": -1.0 } }),
    );
    let m = stdout_json(&qbeep(&[
        "metrics",
        "--a",
        s(&a),
        "--b",
        s(&b),
        "--truth",
        "1011",
        "--cost",
        s(&cost),
    ]));
    // a: (0.52·4 + 0.16·2 + 0.15)/4 = 0.6375; b: 0.9
    assert!((m["a"]["cost_ratio"].as_f64().unwrap() - 0.6375).abs() < 1e-12);
    assert!((m["cost_ratio_improvement"].as_f64().unwrap() - 0.9 / 0.6375).abs() < 1e-12);
    assert!((m["pst_ratio"].as_f64().unwrap() - 0.9 / 0.52).abs() < 1e-12);

    let bad = write(
        d.path(),
        "bad.json",
        json!({ "c_min": 1.0, "default": 0.0, "costs": {} }),
    );
    assert_eq!(
        qbeep(&["metrics", "--a", s(&a), "--b", s(&b), "--cost", s(&bad)])
            .status
            .code(),
        Some(2)
    );

    let w = write(
        d.path(),
        "w.json",
        json!({ "width": 3, "shots": 1, "counts": { "000": 1 } }),
    );
    assert_eq!(
        qbeep(&["metrics", "--a", s(&a), "--b", s(&w)])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn missing_file_is_reported() {
    let o = qbeep(&[
        "fit",
        "--counts",
        "/nonexistent/counts.json",
        "--truth",
        "0",
    ]);
    assert_ne!(o.status.code(), Some(0));
    assert!(!o.stderr.is_empty());
}
