//! End-to-end tests of the installed binary: flag handling, exit codes,
//! report files, and table output.

use std::process::{Command, Output};

use modcurve::pipelines::Report;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_modcurve"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn x37_verify_writes_report_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let out = run(&["x37-verify", "--json", report_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("x0_37:"), "summary line missing: {text}");
    assert!(text.contains("[pass] map-identity"));
    assert!(text.contains("[skip] table-curves"));
    let report: Report =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report.suite, "x0_37");
    assert_eq!(report.rng_seed, 0);
    assert_eq!(report.failed(), 0);
    assert!(report.checks.iter().any(|c| c.check_id == "even-model"));
    // the stdout counts agree with the report
    assert!(text.contains(&format!(
        "{} passed, {} failed, {} skipped",
        report.passed(),
        report.failed(),
        report.skipped()
    )));
}

#[test]
fn x13_verify_honors_only_filter() {
    let out = run(&["x13-verify", "--only", "cusps-on-model,d-pair"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("[pass] cusps-on-model"));
    assert!(text.contains("[skip] psi19-root"));
    assert!(text.contains("2 passed"));
}

#[test]
fn x37_table_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("table.csv");
    let out = run(&[
        "x37-table",
        "--max-k",
        "5",
        "--format",
        "csv",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "k,D,x,y,j,A,B");
    // k = 3 is the rational fiber, so 1, 2, 4, 5 remain
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("1,-3,"));
}

#[test]
fn x37_table_json_to_stdout() {
    let out = run(&["x37-table", "--max-k", "5"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 4);
    assert_eq!(rows[0]["D"], "-3");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["x37-table", "--max-k", "0"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["x37-table", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn missing_jmap_file_is_operational_error() {
    let out = run(&["x37-table", "--jmap", "/nonexistent/jmap.txt"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn unwritable_report_path_is_operational_error() {
    let out = run(&[
        "x37-verify",
        "--only",
        "working-model",
        "--json",
        "/nonexistent-dir/report.json",
    ]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn wrong_jmap_is_a_check_failure() {
    // a well-formed map that cannot match the reference table: j = 5
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("jmap.txt");
    std::fs::write(
        &path,
        "provenance: negative control\n[numerator]\n0 0 5\n[denominator]\n0 0 1\n",
    )
    .unwrap();
    let out = run(&[
        "x37-verify",
        "--only",
        "table-curves",
        "--jmap",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("[FAIL] table-curves"), "{text}");
    assert!(text.contains("1 failed"));
}
