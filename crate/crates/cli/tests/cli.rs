//! Golden tests for the `matx` binary: exit codes, text lines and
//! canonical JSON reports whose witnesses replay against the input.

use std::path::PathBuf;
use std::process::{Command, Output};

use matx_core::report::replay_report;
use matx_core::{parse_matroid, Report};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn matx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matx"))
        .args(args)
        .env_remove("MATX_CAP")
        .env_remove("MATX_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

/// Parses the report and replays every witness against `file`.
fn replayed(out: &Output, file: &str) -> Report {
    let report = Report::from_json(&stdout(out)).expect("canonical report");
    let m = parse_matroid(&std::fs::read_to_string(data(file)).unwrap()).unwrap();
    replay_report(&report, &m).expect("witnesses replay");
    report
}

#[test]
fn validate_prints_summary() {
    let out = matx(&["validate", "--file", &data("u24.mat")]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "matroid: n=4 r=2 bases=6\n");
    let out = matx(&["validate", "--file", &data("k4.mat")]);
    assert_eq!(stdout(&out), "matroid: n=6 r=3 bases=16\n");
}

#[test]
fn validate_rejects_non_matroid_with_exit_1() {
    let out = matx(&["validate", "--file", &data("not-a-matroid.mat"), "--json"]);
    assert_eq!(code(&out), 1);
    let report = Report::from_json(&stdout(&out)).unwrap();
    assert_eq!(report.result["valid"], false);
    assert!(report.result["error"].as_str().unwrap().contains("exchange axiom"));
}

#[test]
fn fibers_of_u24_are_connected() {
    let out = matx(&["fibers", "--file", &data("u24.mat"), "-d", "2", "--variant", "w2", "--json"]);
    assert_eq!(code(&out), 0);
    let report = replayed(&out, "u24.mat");
    let total = report.result["fibers_total"].as_u64().unwrap();
    assert!(total >= 1);
    assert_eq!(report.result["fibers_connected"].as_u64().unwrap(), total);
}

#[test]
fn kpart_reports_violating_set() {
    let out = matx(&["kpart", "--file", &data("three-parallel.mat"), "-k", "2", "--json"]);
    assert_eq!(code(&out), 1);
    let report = replayed(&out, "three-parallel.mat");
    let text = serde_json::to_string(&report.witnesses).unwrap();
    assert!(text.contains(r#""set":[1,2,3]"#), "{text}");
    assert!(text.contains(r#""type":"violation""#));

    let out = matx(&["kpart", "--file", &data("u24.mat"), "-k", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "partition: 12|34\n");
}

#[test]
fn rank_of_a_triangle_and_a_tree() {
    // K4 edges in order 12 13 14 23 24 34: {12,13,23} is a triangle
    let out = matx(&["rank", "--file", &data("k4.mat"), "--set", "1,2,4"]);
    assert_eq!(stdout(&out), "rank(124) = 2\n");
    let out = matx(&["rank", "--file", &data("k4.mat"), "--set", "123"]);
    assert_eq!(stdout(&out), "rank(123) = 3\n");
}

#[test]
fn graph_summaries() {
    let out = matx(&["graph", "--file", &data("u24.mat"), "--kind", "basis", "--json"]);
    assert_eq!(code(&out), 0);
    let report = replayed(&out, "u24.mat");
    assert_eq!(report.result["summary"]["vertex_count"], 6);
    assert_eq!(report.result["summary"]["edge_count"], 12);
    assert_eq!(report.result["adjacency"].as_array().unwrap().len(), 6);

    let out = matx(&["graph", "--file", &data("five-basis.mat"), "--kind", "kbase-modified"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "4 vertices, 6 edges, 1 component(s), diameter 1\n");

    let out = matx(&["graph", "--file", &data("five-basis.mat"), "--kind", "kbase", "-k", "2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn complementary_single_basis() {
    // bases 12 13 14 23 24: the complement of 13 is 24, of 12 it is 34
    let out = matx(&["complementary", "--file", &data("five-basis.mat"), "-k", "2", "--set", "13", "--json"]);
    assert_eq!(code(&out), 0);
    replayed(&out, "five-basis.mat");
    let out = matx(&["complementary", "--file", &data("five-basis.mat"), "-k", "2", "--set", "1,3"]);
    assert_eq!(stdout(&out), "complementary: 13 + 24\n");
    let out = matx(&["complementary", "--file", &data("five-basis.mat"), "-k", "2", "--set", "12"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "not complementary: 12\n");
}

#[test]
fn path_and_conjecture_reports_replay() {
    let out = matx(&["path", "--file", &data("u24.mat"), "--from", "12|34", "--to", "14|23", "--json"]);
    assert_eq!(code(&out), 0);
    let report = replayed(&out, "u24.mat");
    assert_eq!(report.result["length"], 1);

    let out = matx(&["path", "--file", &data("u24.mat"), "--from", "12|34", "--to", "12|13"]);
    assert_eq!(code(&out), 2, "different union vectors are a usage error");

    let out = matx(&[
        "conjecture", "--file", &data("u24.mat"), "--check", "audit", "-k", "2", "-s", "1", "--bases", "12", "--json",
    ]);
    assert_eq!(code(&out), 0);
    let report = replayed(&out, "u24.mat");
    assert_eq!(report.result["bound"], "54");

    let out = matx(&[
        "conjecture", "--file", &data("u24.mat"), "--check", "saturation", "--from", "12|34", "--to", "13|24",
        "--set", "12",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(code(&matx(&["bogus"])), 2);
    assert_eq!(code(&matx(&["fibers", "--file", &data("u24.mat")])), 2);
    assert_eq!(code(&matx(&["validate", "--file", &data("missing.mat")])), 2);
    assert_eq!(code(&matx(&["fibers", "--file", &data("u24.mat"), "-d", "2", "--variant", "w9"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.mat");
    std::fs::write(&bad, "matroid v1\nkind bases\nn four\n").unwrap();
    let out = matx(&["validate", "--file", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn caps_exit_3_from_flag_and_env() {
    let out = matx(&["fibers", "--file", &data("u24.mat"), "-d", "3", "--cap", "5"]);
    assert_eq!(code(&out), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_matx"))
        .args(["graph", "--file", &data("k4.mat"), "--kind", "basis"])
        .env("MATX_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    assert_eq!(code(&matx(&["catalog", "-r", "2", "--n-max", "9"])), 3);
}

#[test]
fn reports_are_byte_identical_across_runs_and_workers() {
    let args = ["fibers", "--file", &data("k4.mat"), "-d", "2", "--json"];
    let one = matx(&args);
    let again = matx(&args);
    let four = Command::new(env!("CARGO_BIN_EXE_matx"))
        .args(args)
        .env("MATX_WORKERS", "4")
        .output()
        .unwrap();
    assert_eq!(one.stdout, again.stdout);
    assert_eq!(one.stdout, four.stdout);
    assert!(!stdout(&one).contains("timing_ms"));
    let timed = stdout(&matx(&["validate", "--file", &data("u24.mat"), "--json", "--timing"]));
    assert!(timed.contains("timing_ms"));
}

#[test]
fn catalog_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = matx(&["catalog", "-r", "2", "--n-max", "4", "--out", dir.path().to_str().unwrap(), "--json"]);
    assert_eq!(code(&out), 0);
    let report = Report::from_json(&stdout(&out)).unwrap();
    assert_eq!(report.result["count"], 11);
    for entry in report.result["entries"].as_array().unwrap() {
        let name = entry["name"].as_str().unwrap();
        let text = std::fs::read_to_string(dir.path().join(format!("{name}.mat"))).unwrap();
        let m = parse_matroid(&text).unwrap();
        assert_eq!(m.content_hash(), entry["hash"].as_str().unwrap());
        assert_eq!(matx_core::emit_matroid(&m), text);
    }
}

#[test]
fn scan_of_one_file() {
    let out = matx(&["scan", "--file", &data("k4.mat"), "--k-range", "2", "--d-range", "2", "--json"]);
    assert_eq!(code(&out), 0);
    let report = replayed(&out, "k4.mat");
    assert_eq!(report.result["failed"], 0);
    assert_eq!(report.result["matroids"], 1);
}
