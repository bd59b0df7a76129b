use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_twistcoh"))
}

fn run_env(args: &[&str], threads: Option<&str>) -> Output {
    let mut c = Command::new(bin());
    c.args(args);
    match threads {
        Some(t) => c.env("TWISTCOH_THREADS", t),
        None => c.env_remove("TWISTCOH_THREADS"),
    };
    c.output().unwrap_or_else(|e| panic!("failed to run {args:?}: {e}"))
}

fn run(args: &[&str]) -> Output {
    run_env(args, None)
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_record(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is a JSON error record");
    assert_eq!(v["error"]["exit_code"].as_i64().unwrap(), out.status.code().unwrap() as i64);
    v
}

#[test]
fn hopf_surface_vanishes_at_one() {
    let v = json_ok(&["mn", "--model", "hopf_surface", "--alpha", "1"]);
    assert_eq!(v["results"][0]["dims"], json!([0, 0, 0, 0, 0]));
    assert_eq!(v["config"]["alpha"], json!(["1"]));
    assert_eq!(v["model_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn torus_untwisted_betti() {
    let v = json_ok(&["mn", "--model", "torus2", "--alpha", "0"]);
    assert_eq!(v["results"][0]["dims"], json!([1, 4, 6, 4, 1]));
}

#[test]
fn hopf_scan_row_is_zero() {
    let v = json_ok(&["hopf", "--beta", "1/2,1/3", "--alpha", "1/5"]);
    let row = &v["results"][0];
    assert_eq!(row["all_zero"], json!(true));
    assert_eq!(row["dims"], json!([[0, 0, 0], [0, 0, 0], [0, 0, 0]]));
}

#[test]
fn output_is_byte_identical_across_thread_counts() {
    let args = ["bc", "--model", "hopf_surface", "--alpha", "-2:2:1/2"];
    let a = run_env(&args, Some("1"));
    let b = run_env(&args, Some("4"));
    let c = run_env(&args, None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn results_follow_grid_order() {
    let v = json_ok(&["mn", "--model", "kodaira_thurston", "--alpha", "3,-1,1/2,0"]);
    let alphas: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["alpha"].as_str().unwrap()).collect();
    assert_eq!(alphas, ["3", "-1", "1/2", "0"]);
}

#[test]
fn csv_has_one_row_per_weight_and_bidegree() {
    let out = run(&["dolbeault", "--model", "torus2", "--alpha", "0,1", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha,p,q,dim");
    assert_eq!(lines.len(), 1 + 2 * 9);
    assert!(lines.contains(&"0,1,1,4"));
}

#[test]
fn model_file_and_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("torus.model");
    let torus = twistcoh::format::serialize(&twistcoh::builtin("torus2").unwrap());
    std::fs::write(&model, torus).unwrap();
    let report = dir.path().join("report.json");
    let out = run(&["mn", "--model", model.to_str().unwrap(), "--alpha", "0", "--out", report.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&report).unwrap()).unwrap();
    assert_eq!(v["results"][0]["dims"], json!([1, 4, 6, 4, 1]));

    // same model, same digest
    let builtin = json_ok(&["mn", "--model", "torus2", "--alpha", "0"]);
    assert_eq!(v["model_digest"], builtin["model_digest"]);
}

#[test]
fn parse_errors_exit_2() {
    for args in [
        vec!["mn", "--alpha", "0.5"],
        vec!["mn", "--alpha", "0:1:0"],
        vec!["mn", "--model", "no_such_fixture"],
        vec!["bc", "--pq", "1"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(error_record(&out)["error"]["kind"], "parse");
    }
}

#[test]
fn corrupt_model_file_exits_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("bad.model");
    std::fs::write(&model, "dim: 2\nJ:\n0 -1\n1 0\ntheta: 1/0 0\n").unwrap();
    let out = run(&["mn", "--model", model.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(error_record(&out)["error"]["message"].as_str().unwrap().contains("line 5"));
}

#[test]
fn validation_failure_exits_3() {
    let out = run(&["mn", "--model", "hopf_surface", "--theta", "0,1,0,0"]);
    assert_eq!(out.status.code(), Some(3));
    let msg = error_record(&out)["error"]["message"].as_str().unwrap().to_string();
    assert!(msg.contains("d theta = 0"), "{msg}");
}

#[test]
fn irrational_eigenvalues_exit_4() {
    let out = run(&["jets", "--linear", "0,-1;1,0"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(error_record(&out)["error"]["kind"], "unsupported");
}

#[test]
fn unwritable_output_exits_6() {
    let out = run(&["mn", "--out", "/nonexistent-dir/report.json"]);
    assert_eq!(out.status.code(), Some(6));
}

#[test]
fn jets_reports_singular_degree() {
    let v = json_ok(&["jets", "--diag", "1/2,1/3", "--alpha", "1/5,1/6"]);
    assert_eq!(v["results"][0]["resolvent"]["status"], "solved");
    assert_eq!(v["results"][0]["resolvent"]["residual_zero"], json!(true));
    assert_eq!(v["results"][1]["resolvent"]["status"], "singular");
    assert_eq!(v["results"][1]["resolvent"]["witness"], json!([1, 1]));
    assert_eq!(v["results"][1]["membership"]["member"], json!(true));
}

#[test]
fn spectrum_lists_hopf_weights() {
    let v = json_ok(&["spectrum", "--model", "hopf_surface"]);
    let all = &v["results"][0];
    assert_eq!(all["selector"], "all");
    assert_eq!(all["rational_roots"], json!(["-1", "0", "1"]));
}

#[test]
fn frolicher_degenerates_by_second_page_at_one() {
    let v = json_ok(&["frolicher", "--model", "hopf_surface", "--alpha", "1"]);
    let r = &v["results"][0];
    assert!(r["degeneration_page"].as_u64().unwrap() <= 2);
    assert!(r["bidegrees"].as_array().unwrap().iter().all(|b| b["e1_partial_exactness"]["holds"] == json!(true)));
}
