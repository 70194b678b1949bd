use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn oscent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oscent")).args(args).env_remove("OSCENT_PRECISION").output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = oscent(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn csv_rows(args: &[&str]) -> Vec<Vec<String>> {
    let out = oscent(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn angular_dipole_record() {
    let v = json(&["angular", "--l", "1", "--m", "0", "--p", "2", "--format", "json"]);
    let r = &v["results"][0];
    assert!((r["lambda"].as_f64().unwrap() - 9.0 / (20.0 * PI)).abs() < 1e-14);
    assert!((r["renyi"].as_f64().unwrap() - (20.0 * PI / 9.0).ln()).abs() < 1e-13);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["request"]["command"], "angular");
    assert!(v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn ground_state_saturates() {
    let v = json(&["uncertainty", "--n", "0", "--l", "0", "--m", "0", "--p", "2"]);
    assert_eq!(v["results"][0]["saturated"], Value::Bool(true));
    let v = json(&["uncertainty", "--n", "1", "--p", "2"]);
    assert_eq!(v["results"][0]["saturated"], Value::Bool(false));
}

#[test]
fn sweep_ratio_converges() {
    let rows = csv_rows(&["sweep", "--quantity", "radial-renyi", "--p", "2", "--n", "50,100,200,400", "--l", "0", "--format", "csv"]);
    let header = &rows[0];
    let col = header.iter().position(|h| h == "norm_ratio").unwrap();
    let dev: Vec<f64> = rows[1..].iter().map(|r| (r[col].parse::<f64>().unwrap() - 1.0).abs()).collect();
    assert_eq!(dev.len(), 4);
    assert!(dev.windows(2).all(|w| w[1] < w[0]), "{dev:?}");
}

#[test]
fn sweep_p3_is_flat() {
    let rows = csv_rows(&["sweep", "--quantity", "radial-renyi", "--p", "3", "--n", "50,100,200", "--format", "csv"]);
    let col = rows[0].iter().position(|h| h == "exact").unwrap();
    let vals: Vec<f64> = rows[1..].iter().map(|r| r[col].parse().unwrap()).collect();
    assert!(vals.iter().all(|v| (v - vals[0]).abs() < 1e-3), "{vals:?}");
}

#[test]
fn output_is_deterministic() {
    let args = ["total", "--n", "0..2", "--l", "0..1", "--m", "all", "--p", "1/2,2", "--jobs", "3"];
    let a = oscent(&args).stdout;
    let b = oscent(&args[..args.len() - 2]).stdout;
    assert_eq!(a, b);
}

#[test]
fn bits_rescale_entropies() {
    let nats = json(&["total", "--p", "2"]);
    let bits = json(&["total", "--p", "2", "--bits"]);
    let (x, y) = (nats["results"][0]["total"].as_f64().unwrap(), bits["results"][0]["total"].as_f64().unwrap());
    assert!((x / std::f64::consts::LN_2 - y).abs() < 1e-12);
    assert_eq!(bits["request"]["units"], "bits");
}

#[test]
fn exit_codes() {
    assert_eq!(oscent(&["angular", "--l", "1", "--m", "2", "--p", "2"]).status.code(), Some(2));
    assert_eq!(oscent(&["total", "--p", "2", "--mode", "asymptotic", "--n", "1", "--l", "0"]).status.code(), Some(0));
    assert_eq!(oscent(&["asymptotic", "--n", "1", "--p", "1.5"]).status.code(), Some(2));
    assert_eq!(oscent(&["angular", "--p", "0"]).status.code(), Some(64));
    assert_eq!(oscent(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(oscent(&["sweep", "--quantity", "radial-renyi", "--p", "2", "--n", ""]).status.code(), Some(64));
    assert_eq!(oscent(&["sweep", "--quantity", "radial-renyi", "--p", "2", "--n", "9,3"]).status.code(), Some(64));
    assert_eq!(oscent(&["uncertainty", "--p", "1.5", "--q", "3"]).status.code(), Some(2));
    assert_eq!(oscent(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_passes() {
    let out = oscent(&["verify", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().skip(1).all(|l| l.contains(",true,")));
}

#[test]
fn verify_failure_exits_one() {
    let out = Command::new(env!("CARGO_BIN_EXE_oscent"))
        .args(["verify", "--suite", "decomposition"])
        .env("OSCENT_PRECISION", "1e-30")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"][0]["pass"], Value::Bool(false));
    assert!(!v["warnings"].as_array().unwrap().is_empty());
}
