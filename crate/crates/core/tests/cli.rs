use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_witt-theta"))
        .args(args)
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v: Value =
        serde_json::from_str(stdout.trim()).unwrap_or_else(|e| panic!("not JSON ({e}): {stdout}"));
    (
        out.status.code().unwrap(),
        v,
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn classify_reduces_entries() {
    let (code, v, _) = run(&[
        "classify",
        "--field",
        r#"{"kind":"padic","p":3}"#,
        "--type",
        "symmetric",
        "--diag",
        "1,-1,3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["class"]["dim"], 3);
    assert_eq!(v["input"]["reduced_entries"].as_array().unwrap().len(), 3);
}

#[test]
fn conserve_predicts_partner() {
    let (code, v, _) = run(&[
        "conserve",
        "--utype",
        "symplectic",
        "--dimU",
        "2",
        "--known",
        "3",
        "--tower",
        "t1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["predicted_n"], 5);
    assert_eq!(v["partner_tower"]["deg"], 3);
}

#[test]
fn check_reports_zero_failures() {
    let (code, v, _) = run(&["check", "--field", "p3", "--all-types"]);
    assert_eq!(code, 0);
    assert_eq!(v["total_failures"], 0);
    assert_eq!(v["passed"], true);
}

#[test]
fn output_is_deterministic() {
    let args = ["tables", "--field", "p2"];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(a.to_string(), b.to_string());
}

#[test]
fn usage_errors_exit_two() {
    let (code, v, _) = run(&["nonsense"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "usage");
    let (code, v, _) = run(&["classify", "--type", "symmetric", "--diag", "1,,3"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["position"]["index"], 1);
}

#[test]
fn pretty_goes_to_stderr() {
    let (code, v, err) = run(&[
        "towers",
        "--field",
        "real",
        "--type",
        "symmetric",
        "--bound",
        "2",
        "--pretty",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["towers"].as_array().unwrap().len(), 5);
    assert!(err.contains("towers:"));
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_witt-theta"))
        .args(["oracle", "isotropy", "--diag", "1,1,1", "--p", "5"])
        .env("WITT_THETA_PRECISION", "7")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["k_max"], 7);
    assert_eq!(v["isotropic"], true);
}
