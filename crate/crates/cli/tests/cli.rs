use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use gaussdist_cli::Report;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaussdist")).args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gaussdist"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn write_doc(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn json_report(out: &Output) -> Report {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    Report::from_json(&String::from_utf8_lossy(&out.stdout)).expect("report parses")
}

const THERMAL_VACUUM: &str = r#"{"states": [{"kind": "thermal", "nbar": 2}, {"kind": "vacuum"}]}"#;

#[test]
fn bounds_thermal_vs_vacuum() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_doc(dir.path(), "tv.json", THERMAL_VACUUM);
    let report = json_report(&run(&["bounds", &path, "--json"]));
    let b = report.bounds.as_ref().unwrap();
    assert!((b.breakdown.trace_delta.value - 4.0).abs() < 1e-12);
    assert!((b.breakdown.bures_bound - 2f64.sqrt()).abs() < 1e-12);
    let best = b.breakdown.specialized_bound().unwrap();
    assert_eq!(best.kind.tag(), "three");
    assert!((best.value - 8f64.sqrt()).abs() < 1e-12);
    assert!(report.passed);
    assert_eq!(report.inputs.len(), 2);

    let text = run(&["bounds", &path]);
    let text = String::from_utf8_lossy(&text.stdout);
    assert!(text.contains("specialization: three = 2.82842712475"), "{text}");
}

#[test]
fn bounds_identical_states_are_zero() {
    let doc = r#"{"states": [{"kind": "coherent", "z": [0.3, 0.1]}, {"kind": "coherent", "z": [0.3, 0.1]}]}"#;
    let report = json_report(&run_stdin(&["bounds", "-", "--json"], doc));
    let b = &report.bounds.unwrap().breakdown;
    assert!((b.overlap - 1.0).abs() < 1e-12);
    assert!(b.bures_bound.abs() < 1e-6);
    assert!(b.trace_delta.value.abs() < 1e-12);
}

#[test]
fn invalid_state_exits_3() {
    let doc = r#"{"states": [{"modes": 1, "mean": [0, 0], "cov": [[0.4, 0], [0, 0.4]]}]}"#;
    let out = run_stdin(&["bounds", "-"], doc);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("UncertaintyViolation"));
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(run_stdin(&["bounds", "-"], "{not json").status.code(), Some(2));
    assert_eq!(run_stdin(&["bounds", "-"], r#"{"states": [{"kind": "vacuum", "cov": [[1]]}]}"#).status.code(), Some(2));
    assert_eq!(run_stdin(&["bounds", "-"], r#"{"states": [], "extra": 1}"#).status.code(), Some(2));
    assert_eq!(run(&["verify", "everything"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "squeeze", "--grid", "0.1,abc"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn missing_file_exits_6() {
    assert_eq!(run(&["bounds", "/nonexistent/states.json"]).status.code(), Some(6));
}

#[test]
fn exact_coherent_vs_vacuum() {
    let doc = r#"{"states": [{"kind": "coherent", "z": [1, 0]}]}"#;
    let report = json_report(&run_stdin(&["exact", "-", "--cutoff", "40", "--json"], doc));
    let e = report.exact.unwrap();
    assert_eq!(e.cutoff, 40);
    assert!((e.metrics.overlap - 0.367879).abs() < 1e-6);
}

#[test]
fn exact_vacuum_pair_is_zero() {
    let report = json_report(&run_stdin(&["exact", "-", "--json"], r#"{"states": [{"kind": "vacuum"}]}"#));
    let m = report.exact.unwrap().metrics;
    assert!(m.trace_distance.abs() < 1e-12 && m.bures.abs() < 1e-12);
}

#[test]
fn exact_rejects_explicit_form() {
    let doc = r#"{"states": [{"kind": "vacuum"}, {"modes": 1, "mean": [0, 0], "cov": [[0.5, 0], [0, 0.5]]}]}"#;
    let out = run_stdin(&["exact", "-"], doc);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("state 2"));
}

#[test]
fn exact_small_cutoff_exits_5() {
    assert_eq!(run_stdin(&["exact", "-", "--cutoff", "4"], THERMAL_VACUUM).status.code(), Some(5));
}

#[test]
fn verify_suites_pass() {
    let report = json_report(&run(&["verify", "random", "--seed", "3", "--count", "6", "--json"]));
    assert_eq!(report.cases.len(), 6);
    assert!(report.passed);

    let report = json_report(&run(&["verify", "asymptotic", "--json"]));
    assert_eq!(report.sweep.len(), 3);
    assert!(report.checks.iter().all(|c| c.passed && c.tag == "three"));
}

#[test]
fn report_round_trip() {
    let out = run(&["verify", "canonical", "--json"]);
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    let report = json_report(&out);
    assert_eq!(report.cases.len(), 10);
    assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
    assert_eq!(report.to_json() + "\n", text);
}

#[test]
fn sweep_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = run(&["sweep", "thermal_vacuum", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let first = std::fs::read(&a).unwrap();
    assert_eq!(first, std::fs::read(&b).unwrap());
    let text = String::from_utf8(first).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("parameter,trace_norm_cov_diff,bound,exact_2db,exact_trace_norm,ratio_2db_bound,ratio_trace_norm_cov_diff")
    );
    assert_eq!(lines.next(), Some("0,0,0,0,0,0,0"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn sweep_squeeze_bound_dominates() {
    let out = run(&["sweep", "squeeze"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for line in text.lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!(cols[2] >= cols[3], "{line}");
    }
}

#[test]
fn sweep_errors() {
    assert_eq!(run(&["sweep", "squeeze", "--out", "/nonexistent/dir/x.csv"]).status.code(), Some(6));
    assert_eq!(run(&["sweep", "thermal_vacuum", "--grid=-0.5"]).status.code(), Some(3));
}
