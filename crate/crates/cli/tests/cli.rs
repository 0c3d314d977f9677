use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thompson-fp")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(v["schema"], "1");
    v
}

#[test]
fn positive_growth_by_series_and_census() {
    let series = json(&["growth", "positive", "--p", "2", "--n", "6", "--method", "series"]);
    assert_eq!(series["coefficients"], serde_json::json!([1, 2, 4, 9, 20, 45]));
    let brute = json(&["growth", "positive", "--p", "3", "--n", "6", "--method", "brute"]);
    let series = json(&["growth", "positive", "--p", "3", "--n", "6"]);
    assert_eq!(brute["coefficients"], series["coefficients"]);
}

#[test]
fn language_growth_methods_agree() {
    let a = json(&["growth", "language", "--p", "3", "--n", "6", "--method", "automaton"]);
    let c = json(&["growth", "language", "--p", "3", "--n", "6", "--method", "closed-form"]);
    let b = json(&["growth", "language", "--p", "3", "--n", "6", "--method", "brute"]);
    assert_eq!(a["coefficients"], c["coefficients"]);
    assert_eq!(a["coefficients"], b["coefficients"]);
}

#[test]
fn csv_output() {
    let out = run(&["growth", "language", "--p", "2", "--n", "4", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "n,count\n0,1\n1,4\n2,12\n3,34\n");
}

#[test]
fn lower_bound_rate() {
    let v = json(&["rate", "lower-bound", "--p", "3", "--tol", "1e-6", "--float"]);
    assert!((v["value"].as_f64().unwrap() - 4.079595623).abs() < 1e-6);
    let exact = json(&["rate", "positive", "--p", "2", "--tol", "1/1000"]);
    assert!(exact["value_lo"].as_str().unwrap().contains('/'));
}

#[test]
fn rate_report_rows() {
    let v = json(&["rate", "report", "--pmax", "4", "--tol", "1e-6"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["violations"], serde_json::json!([]));
}

#[test]
fn normalize_forms() {
    let fin = json(&["normalize", "--p", "2", "--form", "fin", "x1 x0 x0^-1"]);
    assert_eq!(fin["normal_form"], "x1");
    let inf = json(&["normalize", "--p", "2", "--form", "inf", "--trace", "x1 x0"]);
    assert_eq!(inf["normal_form"], "x0 x2");
    assert_eq!(inf["trace"][0]["rule"], "PushPositive");
}

#[test]
fn length_equal_eval() {
    let len = json(&["length", "--p", "2", "x2"]);
    assert_eq!(len["length"], 3);
    assert_eq!(len["carets"].as_array().unwrap().len(), 4);
    let eq = json(&["equal", "--p", "2", "x1 x0", "x0 x2"]);
    assert_eq!(eq["equal"], true);
    let ev = json(&["eval", "--p", "2", "x0"]);
    assert_eq!(ev["source"], "CCLLL");
    assert_eq!(ev["target"], "CLCLL");
}

#[test]
fn verify_small_profile() {
    let v = json(&["verify", "--p", "2", "--profile", "small"]);
    assert_eq!(v["all_passed"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["growth", "positive", "--p", "1", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["rate", "positive", "--p", "2", "--tol", "-1"]).status.code(), Some(2));
    let not_positive = run(&["length", "--p", "2", "x0^-1"]);
    assert_eq!(not_positive.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&not_positive.stderr).contains("not positive"));
    assert_eq!(run(&["eval", "--p", "2", "x0 y1"]).status.code(), Some(1));
    assert_eq!(run(&["growth", "positive", "--p", "2", "--n", "3", "--method", "automaton"]).status.code(), Some(1));
}

#[test]
fn deterministic_output() {
    let args = ["verify", "--p", "3", "--profile", "small"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
