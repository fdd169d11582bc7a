use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qhopf")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, text) = run(args);
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")))
}

#[test]
fn list_and_verify() {
    let (code, v) = run_json(&["list"]);
    assert_eq!(code, 0);
    assert!(v["instances"].as_array().unwrap().iter().any(|s| s == "H32"));
    assert_eq!(v["schema_version"], 1);
    for spec in ["Aq:n=2,r=1", "H32"] {
        let (code, v) = run_json(&["verify", spec]);
        assert_eq!(code, 0, "{spec}");
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn malformed_input_exits_2() {
    let (code, v) = run_json(&["verify", "Aq:n=2,r=2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "NOT_PRIMITIVE");
    let (code, v) = run_json(&["verify", "nonsense"]);
    assert_eq!(code, 2);
    assert!(v["error"]["message"].is_string());
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn weyl_reports() {
    let (code, v) = run_json(&["weyl", "--type", "A1xA1", "--p", "5", "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["cases"][0]["note"], "no length-3 elements");
    assert_eq!(v["pass"], true);
    let (code, csv) = run(&["weyl", "--type", "B2", "--pmax", "14", "--csv"]);
    assert_eq!(code, 0);
    assert!(csv.lines().any(|l| l.starts_with("B2,5,1,") && l.ends_with(",1")));
    let (code, v) = run_json(&["weyl", "--p3", "A2"]);
    assert_eq!(code, 0);
    assert_eq!(v["p3"]["dimension"], 0);
}

#[test]
fn export_and_load_from_file() {
    let path = std::env::temp_dir().join(format!("qhopf-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    assert_eq!(run(&["export", "taft:N=3,r=1", "--out", p]).0, 0);
    let (code, v) = run_json(&["verify", "--from-file", p]);
    assert_eq!(code, 0);
    assert_eq!(v["dim"], 9);
    let (code, v) = run_json(&["radical", "--from-file", p]);
    assert_eq!(code, 0);
    assert_eq!(v["radical_codim"], 3);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(run(&["verify", "--from-file", "/nonexistent/qhopf.json"]).0, 2);
}

#[test]
fn cohomology_jobs() {
    let (code, v) = run_json(&["hochschild", "dual:taft:N=2,r=1", "--kmax", "3", "--mode", "exact"]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([1, 0, 1, 0]));
    let (code, v) = run_json(&["hochschild", "Aq:n=2,r=1", "--coeff", "self", "--kmax", "0"]);
    assert_eq!(code, 0);
    assert!(v["dims"][0].as_u64().unwrap() >= 1);
    let (_, v) = run_json(&["groupcoh", "--n", "2", "--r", "1", "--solve"]);
    assert_eq!(v["coboundary"], false);
    let (_, v) = run_json(&["groupcoh", "--n", "2", "--r", "1", "--inflate", "4", "--solve"]);
    assert_eq!(v["coboundary"], true);
}

#[test]
fn semidirect_pipeline() {
    let (code, v) = run_json(&["semidirect", "Aq:n=2,r=1", "--untwist"]);
    assert_eq!(code, 0);
    assert_eq!(v["dim"], 16);
    assert_eq!(v["isomorphic_to_target"], true);
}
