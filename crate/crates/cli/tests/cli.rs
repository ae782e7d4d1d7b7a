use std::process::{Command, Output};

use serde_json::Value;

fn qh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qh")).args(args).output().expect("run qh")
}

fn json(args: &[&str]) -> Value {
    let out = qh(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn delta_gr25() {
    let v = json(&["delta", "gr:2,5"]);
    assert_eq!(v["formulas_agree"], true);
    assert_eq!(v["delta"]["terms"]["(3,3)"], "10");
    assert_eq!(v["delta"]["terms"]["(1)"], "5*q");
    assert_eq!(v["delta"]["terms"].as_object().unwrap().len(), 2);
}

#[test]
fn delta_installed_fci() {
    let v = json(&["delta", "fci:2,3;r=3"]);
    assert_eq!(v["installed"], true);
    assert_eq!(v["formulas_agree"], true);
}

#[test]
fn estimate() {
    assert_eq!(json(&["estimate", "3", "7"])["est"], 35);
    let out = qh(&["estimate", "3", "7", "--format", "text"]);
    assert_eq!(stdout(&out).trim(), "35");
}

#[test]
fn sinfty_quadric4() {
    let v = json(&["sinfty", "quadric:4", "--from", "unit"]);
    assert_eq!(v["count"], 1);
    assert_eq!(v["points"][0], "[1 + s4]");
}

#[test]
fn orbit_and_complexity() {
    let v = json(&["orbit", "pn:3"]);
    assert_eq!(v["states"].as_array().unwrap().len(), 4);
    assert_eq!(v["cycle"]["period"], 4);
    let v = json(&["complexity", "pn:2", "--from", "unit", "--to", "H"]);
    assert_eq!(v["exact"]["k"], 2);
    let v = json(&["complexity", "pn:2", "--to", "H:1;1:1", "--eps", "0.5"]);
    assert_eq!(v["exact"]["k"], Value::Null);
    assert_eq!(v["exact"]["definitive"], true);
}

#[test]
fn powers() {
    let v = json(&["powers", "pn:2", "--k", "3"]);
    let p = v["powers"].as_array().unwrap();
    assert_eq!(p.len(), 4);
    assert_eq!(p[1]["power"]["text"], "3*H^2");
    assert_eq!(p[3]["power"]["text"], "27*q^2");
}

#[test]
fn ring_and_export() {
    let v = json(&["ring", "quadric:3"]);
    assert_eq!(v["rank"], 4);
    assert_eq!(v["tau"], 3);
    let e = json(&["ring", "gr:2,4", "--export"]);
    assert_eq!(e["labels"].as_array().unwrap().len(), 6);
}

#[test]
fn dimf_and_amatrix() {
    let v = json(&["dimf", "gr:2,6"]);
    assert_eq!(v["computed"], 9);
    assert_eq!(v["closed_form"], 9);
    assert_eq!(v["bound"], 9);
    let a = json(&["amatrix", "gr:2,5"]);
    assert_eq!(a["symmetric"], true);
    assert_eq!(a["positive_definite"], true);
}

#[test]
fn csv_output() {
    let out = qh(&["orbit", "pn:2", "--format", "csv"]);
    assert_eq!(stdout(&out), "k,state\n0,[1]\n1,[H^2]\n2,[H]\n");
}

#[test]
fn out_file() {
    let dir = std::env::temp_dir().join(format!("qh-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("est.json");
    let out = qh(&["estimate", "2", "6", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["est"], 9);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["ring", "bogus:3"][..],
        &["delta", "gr:2"],
        &["complexity", "pn:2", "--to", "nolabel"],
        &["estimate", "0", "4"],
        &["verify", "--criteria", "12"],
        &["delta", "pn:2", "--format", "csv"],
        &["frobnicate"],
    ] {
        assert_eq!(qh(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn computation_error_is_json() {
    let out = qh(&["amatrix", "fci:3;r=3"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "unsupported");
    assert!(v["error"]["message"].as_str().unwrap().contains("point"));
}

#[test]
fn verify_exit_codes() {
    let ok = qh(&["verify", "--criteria", "1,2", "--format", "text"]);
    assert_eq!(ok.status.code(), Some(0));
    let text = stdout(&ok);
    assert!(text.starts_with("PASS criterion 1"), "{text}");
    assert_eq!(text.lines().count(), 2);
    // criterion 3 carries the recorded estimate-table conflict
    let bad = qh(&["verify", "--criteria", "3"]);
    assert_eq!(bad.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(v["pass"], false);
}

#[test]
fn verify_deterministic() {
    let a = qh(&["verify", "--criteria", "2,1"]);
    let b = qh(&["verify", "--criteria", "1,2"]);
    assert_eq!(a.stdout, b.stdout);
}
