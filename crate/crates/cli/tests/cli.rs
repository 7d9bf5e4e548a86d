use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn ratsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratsum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = ratsum(&a);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn reflected_pair_sums_to_zero() {
    let v = json(&["sum", "1/(k^3+k*n+1) - 1/((n-k)^3+(n-k)*n+1)", "--verify-n", "25"]);
    assert_eq!(v["command"], "sum");
    assert_eq!(v["verdict"], "RationalSum");
    assert_eq!(v["result"]["value"], "0");
    assert_eq!(v["result"]["verification"]["mismatches"], serde_json::json!([]));
    assert_eq!(v["timing_ms"], Value::Null);
}

#[test]
fn classify_reports_witness() {
    let v = json(&["classify", "k^2-n"]);
    assert_eq!(v["result"]["type"], "symmetric");
    assert_eq!(v["result"]["witness"]["a"], "-1");
}

#[test]
fn hardness_demo_finds_nothing() {
    let v = json(&["demo-hardness", "--n-max", "40"]);
    assert_eq!(v["result"]["none_found"], true);
    assert_eq!(v["result"]["values"][0]["value"], "3/2");
    let grid = v["result"]["grid"].as_array().unwrap();
    assert!(grid.iter().all(|g| g["outcome"] == "none found"));
}

#[test]
fn schema_keys_are_fixed() {
    for args in [
        vec!["parse", "k+n"],
        vec!["pfd", "1/(k*(k+n))"],
        vec!["factor", "k^2-n^2"],
        vec!["classes", "1/(k+1) - 1/(k+2)"],
        vec!["oracle", "1/(k+1)", "--n", "0..5", "--fit", "1,1"],
        vec!["recurrence", "1/((k+1)*(k+2))", "--order", "1", "--degree", "2", "--n", "0..30"],
        vec!["conjecture", "1/(k+1) - 1/(k+2)", "--n-max", "20", "--fit", "2,2"],
        vec!["wellposed", "1/(2*k-n)", "--horizon", "30"],
    ] {
        let v = json(&args);
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            ["command", "input", "result", "classes", "verdict", "diagnostics", "timing_ms"],
            "{args:?}"
        );
        assert_eq!(v["command"], args[0]);
    }
}

#[test]
fn text_and_json_agree() {
    let text = ratsum(&["wellposed", "1/(2*k-n)", "--horizon", "10"]);
    let s = String::from_utf8(text.stdout).unwrap();
    assert!(s.contains("status: ill-posed for n = 0 mod 2"));
    assert!(s.contains("bad_n: [0, 2, 4, 6, 8, 10]"));
    let v = json(&["wellposed", "1/(2*k-n)", "--horizon", "10"]);
    assert_eq!(v["result"]["factors"][0]["status"], "ill-posed for n = 0 mod 2");
}

#[test]
fn output_is_deterministic() {
    let args = ["sum", "1/(k+3) + 2/(k+2+n) - 2/(2*k+1)", "--format", "json"];
    assert_eq!(ratsum(&args).stdout, ratsum(&args).stdout);
}

#[test]
fn reads_stdin_and_writes_out_file() {
    let dir = std::env::temp_dir().join(format!("ratsum-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let mut child = Command::new(env!("CARGO_BIN_EXE_ratsum"))
        .args(["parse", "-", "--format", "json", "--out"])
        .arg(&path)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"(k^2-n^2)/(k-n)\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, out.stdout);
    let v: Value = serde_json::from_slice(&written).unwrap();
    assert_eq!(v["result"]["canonical"], "k + n");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn exit_codes() {
    assert_eq!(ratsum(&["parse", "1/(k-k)"]).status.code(), Some(2));
    assert_eq!(ratsum(&["parse", "2 k"]).status.code(), Some(2));
    assert_eq!(ratsum(&["classify", "k^2-1"]).status.code(), Some(3));
    assert_eq!(ratsum(&["wellposed", "1/k", "--horizon", "0"]).status.code(), Some(3));
    assert_eq!(ratsum(&["demo-hardness", "--n-max", "2"]).status.code(), Some(3));
    let short = ["recurrence", "1/(k+1)", "--order", "3", "--degree", "4", "--n", "0..5"];
    assert_eq!(ratsum(&short).status.code(), Some(3));
    let cap = ["sum", "1/(k^3+k*n+1) - 1/((5*k)^3+5*k*n+1)", "--modulus-cap", "2"];
    assert_eq!(ratsum(&cap).status.code(), Some(4));
    assert_eq!(ratsum(&["sum", "1/(k^2+n+1)"]).status.code(), Some(0));
    let bad = ratsum(&["sum", "1/k", "--bogus"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("Usage"));
}

#[test]
fn timing_is_opt_in() {
    let v = json(&["parse", "k", "--timing"]);
    assert!(v["timing_ms"].is_number());
}
