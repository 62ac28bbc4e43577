//! Runs the built binary end to end.

use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn lefschetz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lefschetz")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn construct_from_file_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("s3.gp");
    fs::write(&input, "x, y | x^2, y^3,\n  x y x y\n").unwrap();
    let out = dir.path().join("report.json");
    let o = lefschetz(&[
        "construct",
        "--file",
        input.to_str().unwrap(),
        "--genus",
        "10",
        "--targets",
        "S3",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let report: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["h"], 5);
    assert_eq!(report["projection_matches"], true);
    assert_eq!(report["evidence"]["verdict"], "consistent");
    assert_eq!(report["evidence"]["proof"], false);
    assert_eq!(report["evidence"]["hom_counts"][0]["left"], 10);
    assert_eq!(report["factorization"]["genus"], 10);
}

#[test]
fn missing_file_is_an_input_error() {
    let o = lefschetz(&["parse", "--file", "/nonexistent/group.gp"]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "io");
}

#[test]
fn refuted_verdict_exits_two() {
    let o = lefschetz(&["verify", "--presentation", "x, y | x^-1 y^-1 x y", "--against", "x |"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("Z^2 vs Z"));
}

#[test]
fn bounds_csv_for_a_presentation() {
    let o = lefschetz(&["bounds", "--presentation", "x, y | x^2 y^3, x^4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,params,lower,upper,exact,note"));
    assert!(lines.next().unwrap().starts_with("presentation,"));
}

#[test]
fn kotschick_ranges_for_zxz() {
    let o = lefschetz(&["bounds", "--presentation", "x, y | x^-1 y^-1 x y", "--b2", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kotschick"]["q_feasible"], false);
}

#[test]
fn export_round_trips_through_json() {
    let o = lefschetz(&["export", "--genus", "2", "--c-exponent", "1", "--conjugators", "1; twist:b1^2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["factors", "genus", "has_section"]);
    let text = stdout(&o);
    assert!(text.find("\"genus\"").unwrap() < text.find("\"has_section\"").unwrap());
    assert!(text.find("\"has_section\"").unwrap() < text.find("\"factors\"").unwrap());
    assert_eq!(v["factors"].as_array().unwrap().len(), 16);
    assert_eq!(v["factors"][11]["curve"], "b1 b2");
}

#[test]
fn simplify_and_homology_check() {
    let o = lefschetz(&["simplify", "--presentation", "a, b | a b^-1, b^3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim().split('|').count(), 2);
    let o = lefschetz(&["homology-check", "--genus", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("identity on H_1: true"));
    let o = lefschetz(&["homology-check", "--genus", "8..2"]);
    assert_eq!(o.status.code(), Some(1));
}
