//! End-to-end tests of the installed binary: spawn it, parse its JSON-lines
//! output, and check exit codes, determinism, and the environment cap.

use std::process::{Command, Output};

use serde_json::Value;

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dyadic-cone"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary spawns")
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

/// A successful invocation's single record.
fn record(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    let parsed = serde_json::from_str(lines.next().expect("a record line")).unwrap();
    assert!(lines.next().is_none(), "expected exactly one record");
    parsed
}

#[test]
fn sigma_spot_value() {
    let rec = record(&["sigma", "--l", "10", "--m", "0", "--k", "2"]);
    assert_eq!(rec["command"], "sigma");
    assert_eq!(rec["status"], "ok");
    assert_eq!(rec["result"]["value"], "200/3");
    assert_eq!(rec["parameters"]["l"], "10");
}

#[test]
fn exact_value_and_divisibility() {
    let rec = record(&["hval", "--l", "5", "--m", "2"]);
    assert_eq!(rec["result"]["value"], "0");
    assert_eq!(rec["result"]["vanishes"], true);
    let rec = record(&["divides", "--l", "5", "--m", "2"]);
    assert_eq!(rec["result"]["divides"], true);
    let rec = record(&["divides", "--l", "3", "--m", "1"]);
    assert_eq!(rec["result"]["divides"], false);
}

#[test]
fn root_carries_its_trace() {
    let rec = record(&["root", "--m", "2", "--bits", "20"]);
    assert_eq!(rec["result"]["residue"]["mod_exp"], 20);
    assert_eq!(rec["result"]["residue"]["value"], "5");
    let trace = rec["result"]["trace"].as_array().unwrap();
    assert_eq!(trace.len(), 17);
    assert!(trace.iter().all(|s| s["correction"] == 0));
}

#[test]
fn lift_step_reports_the_decision() {
    let rec = record(&["lift", "--m", "4", "--root", "2", "--bits", "3"]);
    assert_eq!(rec["result"]["representative"], "10");
    assert_eq!(rec["result"]["bit"], 1);
    assert_eq!(rec["result"]["parity_offset"], 1);
    assert_eq!(rec["result"]["new_root"], "2");
}

#[test]
fn truncated_evaluation_at_a_hundred_bit_degree() {
    // 2^100 + 5 lies on the order-2 root chain, so the value vanishes.
    let rec = record(&[
        "hmod",
        "--l",
        "1267650600228229401496703205381",
        "--m",
        "2",
        "--bits",
        "8",
    ]);
    assert_eq!(rec["result"]["residue"]["value"], "0");
    // 2^100 + 2 does not, and the value is a unit.
    let rec = record(&[
        "hmod",
        "--l",
        "1267650600228229401496703205378",
        "--m",
        "2",
        "--bits",
        "8",
    ]);
    assert_eq!(rec["result"]["residue"]["value"], "1");
}

#[test]
fn multiplier_dimensions_match_the_two_regimes() {
    let rec = record(&["multipliers", "--b", "1", "--dmax", "3"]);
    assert_eq!(rec["result"]["total_dim"], 3);
    let rec = record(&["multipliers", "--b", "5/2", "--dmax", "6"]);
    assert_eq!(rec["result"]["total_dim"], 2);
}

#[test]
fn scan_verdict_and_csv_table() {
    let rec = record(&["scan", "--m", "4", "--bits", "3", "--window", "32"]);
    assert_eq!(rec["result"]["coarse"], serde_json::json!([10, 18, 26, 34]));
    assert_eq!(rec["result"]["solutions"], serde_json::json!([18, 34]));
    assert_eq!(rec["result"]["consistent"], true);

    let out = run(&["scan", "--m", "0", "--bits", "3", "--window", "16", "--csv"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "l,m,N,residue,exact_value");
    assert_eq!(lines.len(), 17);
    assert_eq!(lines[1], "0,0,3,1,1");
    assert_eq!(lines[11], "10,0,3,0,520/63");
}

#[test]
fn identical_invocations_are_bit_identical() {
    let args = [
        "stability", "--m", "4", "--bits", "6", "--pairs", "40", "--seed", "9",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let args = ["scan", "--m", "6", "--bits", "4", "--window", "64", "--jobs", "2"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn domain_errors_exit_2_with_a_typed_record() {
    let out = run(&["root", "--m", "3", "--bits", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let rec: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec["status"], "error");
    assert_eq!(rec["error"], "OddM");
    assert!(rec.get("result").is_none());

    let out = run(&["multipliers", "--b", "1/2", "--dmax", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let rec: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec["error"], "BadRange");
}

#[test]
fn usage_errors_exit_1() {
    let out = run(&["sigma", "--l", "10", "--m", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());

    let out = run(&["hmod", "--l", "ten", "--m", "0", "--bits", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());

    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn environment_caps_the_modulus() {
    let out = run_env(
        &["root", "--m", "0", "--bits", "20"],
        &[("DYADIC_CONE_MAX_BITS", "10")],
    );
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("DYADIC_CONE_MAX_BITS"), "stderr: {stderr}");

    let out = run_env(
        &["root", "--m", "0", "--bits", "20"],
        &[("DYADIC_CONE_MAX_BITS", "plenty")],
    );
    assert_eq!(out.status.code(), Some(1));

    let out = run_env(
        &["root", "--m", "0", "--bits", "20"],
        &[("DYADIC_CONE_MAX_BITS", "32")],
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn help_exits_cleanly() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    for sub in [
        "sigma", "hval", "hmod", "divides", "root", "lift", "scan", "stability",
        "multipliers", "solid", "selftest",
    ] {
        assert!(stdout.contains(sub), "missing subcommand {sub} in help");
    }
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    let records: Vec<Value> = stdout
        .lines()
        .map(|line| serde_json::from_str(line).unwrap())
        .collect();
    assert!(records.len() >= 10);
    assert!(records.iter().all(|r| r["status"] == "ok"));
}
