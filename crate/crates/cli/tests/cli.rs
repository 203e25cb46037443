use std::process::{Command, Output};

use serde_json::Value;

fn mbs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mbs"))
        .args(args)
        .env_remove("MBS_PRECISION")
        .output()
        .expect("run mbs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(args: &[&str]) -> Value {
    let o = mbs(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn spectrum_i_three_values() {
    let v = json(&["spectrum", "--point", "i", "--count", "3", "--json"]);
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 3);
    let decimals: Vec<&str> = pts.iter().map(|p| p["value"]["decimal"].as_str().unwrap()).collect();
    assert_eq!(decimals, ["2.29128784747792", "2.49443825784929", "2.52752523165195"]);
    assert_eq!(pts[0]["value"]["d"], 21);
    assert_eq!(pts[0]["certificate"], "exact");
}

#[test]
fn lambda_rho_of_a5() {
    let o = mbs(&["lambda", "--point", "rho", "--form", "form(1,-5,-1)"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("sqrt(87)/5"));
}

#[test]
fn markov_bound_35() {
    let v = json(&["markov", "--bound", "35", "--json"]);
    let maxima: Vec<u64> = v.as_array().unwrap().iter().map(|t| t[2].as_u64().unwrap()).collect();
    assert_eq!(maxima, [1, 2, 5, 13, 34, 29]);
    let text = stdout(&mbs(&["markov", "--count", "5"]));
    assert!(text.contains("sqrt(221)/5"));
}

#[test]
fn exit_codes() {
    // decimal literal and bad syntax are parse errors
    assert_eq!(mbs(&["lambda", "--point", "i", "--form", "form(1.5,2,3)"]).status.code(), Some(2));
    assert_eq!(mbs(&["lambda", "--point", "i", "--form", "form(1,2"]).status.code(), Some(2));
    assert_eq!(mbs(&["spectrum", "--point", "j"]).status.code(), Some(2));
    assert_eq!(mbs(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(mbs(&["frobnicate"]).status.code(), Some(2));
    // beyond the proven range, and a square discriminant form with no billiard
    assert_eq!(mbs(&["spectrum", "--point", "rho", "--count", "2"]).status.code(), Some(3));
    assert_eq!(mbs(&["lambda", "--point", "rho", "--form", "form(1,0,1)"]).status.code(), Some(3));
}

#[test]
fn precision_variable() {
    let o = Command::new(env!("CARGO_BIN_EXE_mbs"))
        .args(["spectrum", "--point", "inf", "--count", "1", "--json"])
        .env("MBS_PRECISION", "30")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["points"][0]["value"]["decimal"], "2.23606797749978969640917366873");
    let bad = Command::new(env!("CARGO_BIN_EXE_mbs"))
        .args(["markov", "--count", "2"])
        .env("MBS_PRECISION", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn billiard_fold_json() {
    let v = json(&["billiard", "--seq", "per(1,3)", "--json"]);
    assert_eq!(v["proper"], true);
    assert_eq!(v["orientable"], false);
    assert_eq!(v["fold"]["closed"], true);
    assert_eq!(v["fold"]["segments"].as_array().unwrap().len(), 10);
    let v = json(&["billiard", "--geodesic", "<0, inf>", "--json"]);
    assert_eq!(v["proper"], false);
    assert_eq!(v["fold"]["segments"].as_array().unwrap().len(), 1);
}

#[test]
fn identical_invocations_identical_bytes() {
    for args in [
        &["render", "--figure", "fig5"][..],
        &["render", "--figure", "billiard", "--billiard", "form(1,-1,-5)", "--segments", "40"],
        &["render", "--figure", "ford", "--scale", "1/2", "--qmax", "8"],
        &["spectrum", "--point", "inf", "--count", "4", "--json"],
    ] {
        let a = mbs(args);
        let b = mbs(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let svg = stdout(&mbs(&["render", "--figure", "disks", "--point", "sqrt-2"]));
    assert!(svg.starts_with("<?xml") && svg.contains("<circle"));
}

#[test]
fn render_writes_file() {
    let dir = std::env::temp_dir().join(format!("mbs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig1.svg");
    let o = mbs(&["render", "--figure", "fig1", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&path).unwrap().contains("</svg>"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_lemmas_suite() {
    let v = json(&["verify", "--suite", "lemmas", "--json"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"][0]["id"], 7);
}
