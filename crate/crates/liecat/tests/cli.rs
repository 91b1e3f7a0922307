//! End-to-end checks of the command-line interface.

use std::process::{Command, Output};

fn liecat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liecat")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn basis_lists_the_small_table() {
    let out = liecat(&["basis", "--gens", "2", "--max-degree", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for expected in ["x", "y", "[x,y]", "[x,[x,y]]", "[[x,y],y]"] {
        assert!(text.contains(expected), "missing {expected} in:\n{text}");
    }
    assert!(text.contains("dimension 2"));
    assert!(text.contains("dimension 1"));
}

#[test]
fn basis_json_has_dimensions() {
    let out = liecat(&["basis", "--gens", "3", "--max-degree", "4", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["dimensions"], serde_json::json!([3, 3, 8, 18]));
    assert_eq!(v["gens"], serde_json::json!(["x", "y", "z"]));
}

#[test]
fn eval_cancels_antisymmetric_sum() {
    let out = liecat(&["eval", "[y,x]+[x,y]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn eval_round_trips_its_own_output() {
    let out = liecat(&["eval", "2*[x,[x,y]] - [y,x] + 1/2*x"]);
    assert!(out.status.success());
    let canonical = stdout(&out).trim().to_string();
    let again = liecat(&["eval", &canonical]);
    assert_eq!(stdout(&again).trim(), canonical);
}

#[test]
fn eval_reports_unknown_generators() {
    let out = liecat(&["eval", "[x,q]"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("unknown generator"), "stderr: {err}");
}

#[test]
fn eval_supports_named_generators_and_fields() {
    let out = liecat(&["eval", "[a,[a,b]]", "--gens", "a,b", "--max-degree", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "[a,[a,b]]");

    let out = liecat(&["eval", "((0)+(1)*w)*x", "--field", "q-sqrt:2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "((0)+(1)*w)*x");
}

#[test]
fn endo_apply_and_compose() {
    let out = liecat(&["endo", "apply", "--map", "x=>[x,y]; y=>y", "--expr", "x"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "[x,y]");

    // phi . c_x = c_{phi(x)}: composing with the constant-at-x map
    let out = liecat(&[
        "endo", "compose", "--map", "x=>[x,y]; y=>y", "--map2", "x=>x; y=>x",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x=>[x,y]; y=>[x,y]");
}

#[test]
fn endo_conjugate_rescales_by_degree() {
    let out = liecat(&[
        "endo", "conjugate", "--map", "x=>x+[y,z]; y=>y; z=>z", "--a", "2", "--gens", "3",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x=>x + 2*[y,z]; y=>y; z=>z");
}

#[test]
fn duality_check_verdicts() {
    let out = liecat(&[
        "duality", "check", "--src-gens", "1", "--tgt-gens", "2",
        "--map", "x=>[x,y]",
        "--point", "x=>[x,y]; y=>y",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["square"], serde_json::json!(true));
    assert_eq!(v["decomposition"], serde_json::json!(true));
}

#[test]
fn duality_separate_finds_a_witness() {
    let out = liecat(&[
        "duality", "separate", "--src-gens", "1", "--tgt-gens", "2",
        "--map", "x=>[x,y]",
        "--map2", "x=>2*[x,y]",
        "--budget-degree", "3",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["separated"], serde_json::json!(true));
    assert!(v["witness"].is_object());
}

#[test]
fn verify_single_suite_and_exit_codes() {
    let out = liecat(&["verify", "constants", "--seed", "3", "--cases", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("constants: PASS"), "stdout: {text}");

    let out = liecat(&["verify", "no_such_suite"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_unknown_flag_is_usage_error() {
    let out = liecat(&["verify", "all", "--definitely-not-a-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_report_schema() {
    let path = std::env::temp_dir().join("liecat-cli-schema.json");
    let out = liecat(&[
        "verify",
        "jacobi",
        "--seed",
        "5",
        "--cases",
        "8",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let body = std::fs::read_to_string(&path).expect("report written");
    let _ = std::fs::remove_file(&path);
    let reports: serde_json::Value = serde_json::from_str(&body).expect("valid json");
    let report = &reports.as_array().expect("array of reports")[0];
    for key in ["suite", "config", "cases", "passed", "failed", "verdict", "failures"] {
        assert!(report.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(report["suite"], serde_json::json!("jacobi"));
    assert_eq!(report["failed"], serde_json::json!(0));
    for key in ["seed", "cases", "max_degree", "n_gens", "field", "sampling"] {
        assert!(report["config"].get(key).is_some(), "missing config key {key}");
    }

    // the stdout summary is machine-readable too
    let text = stdout(&out);
    let summary_line = text.lines().last().expect("summary line");
    let summary: serde_json::Value = serde_json::from_str(summary_line).expect("summary json");
    assert_eq!(summary["all_pass"], serde_json::json!(true));
}
