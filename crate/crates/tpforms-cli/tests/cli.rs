//! Contract tests for the `tpforms` binary: JSON shape, exact strings,
//! and exit codes.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tpforms"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("single JSON document on stdout")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn field_reports_case_and_integral_basis() {
    let v = run_json(&["field", "--biquad", "2", "3"]);
    assert_eq!(v["case"], "C1");
    assert_eq!(v["degree"], 4);
    assert_eq!(v["radicands"], serde_json::json!([2, 3, 6]));
    let basis: Vec<&str> =
        v["integral_basis"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(basis, ["1", "sqrt(2)", "sqrt(3)", "1/2*sqrt(2) + 1/2*sqrt(6)"]);

    let v = run_json(&["field", "--cubic", "6"]);
    assert_eq!(v["kind"], "simplest cubic");
    assert_eq!(v["monogenic"], false);
    assert_eq!(v["integral_basis"], serde_json::json!(["1", "rho", "rho^2"]));
}

#[test]
fn field_debug_adds_enclosures_only_then() {
    let plain = run_json(&["field", "--biquad", "2", "3"]);
    assert!(plain.get("enclosures").is_none());
    let dbg = run_json(&["field", "--biquad", "2", "3", "--debug"]);
    let encl = dbg["enclosures"].as_array().expect("enclosures under --debug");
    assert_eq!(encl.len(), 4);
    // Endpoints are exact rational strings, never floats.
    let lo = encl[1][0][0].as_str().unwrap();
    assert!(lo.chars().all(|c| c.is_ascii_digit() || c == '/' || c == '-'), "{lo}");
}

#[test]
fn indecomposables_match_the_closed_form() {
    let v = run_json(&["indecomposables", "--cubic", "2"]);
    assert_eq!(v["count"], 6);
    assert_eq!(v["closed_form"], 6);
    assert_eq!(v["points"][0]["coords"], serde_json::json!(["0", "-1", "1"]));
}

#[test]
fn decompose_lists_the_known_witness() {
    let v = run_json(&["decompose", "--elem", r#"{"field":"(2,5)","coords":["7","0","0","2"]}"#]);
    assert_eq!(v["count"], 1);
    assert_eq!(v["indecomposable"], false);
    assert_eq!(
        v["decompositions"][0],
        serde_json::json!([["7/2", "-1", "-1/2", "1"], ["7/2", "1", "1/2", "1"]])
    );
}

#[test]
fn form_check_distinguishes_classical_and_integral_splittings() {
    let form = r#"{"field":"(2,3)","n":2,"coeffs":[[0,0,["2","0","0","0"]],[0,1,["0","0","2","0"]],[1,1,["2","0","0","0"]]]}"#;
    let classical = run_json(&["form-check", "--form", form]);
    assert_eq!(classical["totally_positive_definite"], true);
    assert_eq!(classical["det"], serde_json::json!(["1", "0", "0", "0"]));
    assert_eq!(classical["decomposable"], false);

    let relaxed = run_json(&["form-check", "--form", form, "--non-classical"]);
    assert_eq!(relaxed["decomposable"], true);
    assert_eq!(relaxed["witness"][0]["classical"], false);
}

#[test]
fn verify_single_claim_passes_and_reports() {
    let v = run_json(&["verify", "--claim", "Ex4.5"]);
    assert_eq!(v["claim_id"], "Ex4.5");
    assert_eq!(v["status"], "pass");
    assert!(v["witnesses"].as_array().unwrap().iter().any(|n| n
        .as_str()
        .unwrap()
        .contains("determinant")));
}

#[test]
fn exit_codes_follow_the_contract() {
    // 1: validation (unknown id).
    let out = run(&["verify", "--claim", "NOPE"]);
    assert_eq!(exit_code(&out), 1);
    // 1: validation (outside the documented range, no --force).
    let out = run(&["verify", "--claim", "L5.2", "--cubic", "99"]);
    assert_eq!(exit_code(&out), 1);
    // 2: budget exceeded.
    let out = Command::new(env!("CARGO_BIN_EXE_tpforms"))
        .args(["verify", "--claim", "P4.7", "--biquad", "2", "3"])
        .env("QFORMS_MAX_CANDIDATES", "10")
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 2);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "skipped_budget");
    // 0: --force escapes the documented-range validation.
    let out = run(&["verify", "--claim", "L5.2", "--cubic", "9", "--force"]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn tally_matches_the_formula_at_the_documented_example() {
    let v = run_json(&["tally", "--cubic", "6"]);
    assert_eq!(v["total"], 21);
    assert_eq!(v["formula_value"], 21);
    assert_eq!(v["a0"], 0);
    assert_eq!(v["family_counts"]["doubled"], 18);
}

#[test]
fn catalog_lists_every_id_as_one_json_line() {
    let out = run(&["catalog", "--list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut ids = Vec::new();
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).expect("each line is JSON");
        ids.push(v["id"].as_str().unwrap().to_string());
    }
    for want in ["Ex4.5", "L4.4", "P4.13-s11", "T5.8", "TY-1mod4-1", "triangle-oracle"] {
        assert!(ids.iter().any(|i| i == want), "missing {want}");
    }
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted, "catalog listing is sorted");
}

#[test]
fn verify_all_appends_a_sorted_summary() {
    let out = run(&["verify", "--all", "--max-a", "0", "--max-pq", "5"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let summary: Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(summary["summary"], true);
    assert_eq!(summary["fail"], 0);
    assert_eq!(summary["skipped_budget"], 0);
    let results = summary["results"].as_array().unwrap();
    // One report line per instance plus the summary line.
    assert_eq!(lines.len(), results.len() + 1);
    let keys: Vec<(String, String)> = results
        .iter()
        .map(|r| (r["claim_id"].as_str().unwrap().to_string(), r["params"].to_string()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted, "summary results are sorted");
}

#[test]
fn closed_stdout_pipe_ends_the_run_quietly() {
    use std::process::Stdio;
    // A large single-document payload guarantees the write outgrows the
    // pipe buffer after the reader is gone.
    let mut child = Command::new(env!("CARGO_BIN_EXE_tpforms"))
        .args(["indecomposables", "--cubic", "120"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    drop(child.stdout.take());
    let out = child.wait_with_output().expect("child finishes");
    assert!(out.status.success(), "closed pipe is not an error: {:?}", out.status);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(!err.contains("panic"), "no panic on stderr: {err}");
}
