use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectral-walks")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    format!("{}/examples/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "all", "--quick"]).status.code(), Some(0));
    assert_eq!(run(&["walk", "sim", "--graph", "missing.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["spectra", "gram", "--words", "1", "--unknown"]).status.code(), Some(2));
    assert_eq!(run(&["spectra", "growth", "--max-depth", "40"]).status.code(), Some(2));
    assert_eq!(run(&["wavelet", "tightness", "--coeffs", "0.5,0.5", "--tolerance", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    // Stretched Haar is not tight at t = 1/2: the check fails and the report is still written.
    let out = run(&["wavelet", "tightness", "--coeffs", "0.5,0,0.5", "--t", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"pass\": false"));
}

#[test]
fn gram_csv_carries_the_matrix() {
    let out = run(&["spectra", "gram", "--words", "1,11", "--out", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# version=") && lines[0].contains(",seed=0,config_hash="));
    assert_eq!(lines[1], "# table: gram");
    assert!(lines[2].starts_with("word,M_1,M_11,lambda,"));
    assert!(lines[3].starts_with("1,1,1,"));
    assert!(lines[4].starts_with("11,1,2,"));
}

#[test]
fn json_reports_lead_with_metadata() {
    let out = run(&["walk", "sim", "--graph", &data("weighted5.json"), "--steps", "8", "--paths", "5000", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_start().starts_with("{\n  \"metadata\""));
    assert_eq!(v["metadata"]["seed"], 42);
    assert_eq!(v["metadata"]["config_hash"].as_str().unwrap().len(), 64);
    let row = &v["tables"]["covariance"][3];
    for key in ["estimate", "exact", "se", "sigmas"] {
        assert!(row[key].is_number(), "{key}");
    }
}

#[test]
fn seeds_change_monte_carlo_output() {
    let args = ["solenoid", "walk", "--steps", "10", "--paths", "2000"];
    let a = run(&[&args[..], &["--seed", "1"]].concat());
    let b = run(&[&args[..], &["--seed", "2"]].concat());
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn filter_files_load() {
    let out = run(&["wavelet", "qmf", "--filter", &data("four_tap.json"), "--out", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["solenoid", "walk", "--w", &data("four_tap.json"), "--steps", "10", "--paths", "5000"]);
    assert_eq!(out.status.code(), Some(0));
}
