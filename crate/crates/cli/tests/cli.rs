use std::path::Path;
use std::process::{Command, Output};

use chring_cli::{run, Report, Settings, TaskConfig, Verdict};
use serde_json::Value;

fn chring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn run_text(text: &str) -> Report {
    let config = TaskConfig::parse(text).unwrap();
    run(&config, &Settings::default(), Path::new(".")).unwrap()
}

#[test]
fn full_suite_reports_gorenstein_table() {
    let out = chring(&["full-suite", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_report(&out);
    let table = &r["tasks"][0]["result"]["gorenstein"];
    assert_eq!(table["SO(2)>1"], 1);
    assert_eq!(table["SU(3)>SU(2)"], 5);
    assert_eq!(table["U(2)>T2"], 2);
    assert_eq!(table["U(3)>T3"], 6);
    assert_eq!(table.as_object().unwrap().len(), 20);
    assert_eq!(r["tasks"][0]["result"]["failures"], Value::Array(vec![]));
}

#[test]
fn shift_iso_on_polynomial_ring_in_one_variable() {
    let out = chring(&["shift-iso", "--pair", "SO(2)>1", "--module", "ring", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_report(&out);
    assert_eq!(r["tasks"][0]["verdict"], "pass");
    assert_eq!(r["tasks"][0]["result"]["shift"], 1);
    assert_eq!(r["tasks"][0]["inputs"]["window"], "-40:40");
}

#[test]
fn malformed_polynomial_exits_2_with_location() {
    let module = r#"{"ring": "T2", "generators": [0], "relations": [["t1 + *t2"]]}"#;
    let out = chring(&["resolve", "--module", module]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("tasks[0].module.relations[0][0], character 5"), "{err}");
}

#[test]
fn config_syntax_error_exits_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"schema\": 1,\n  \"tasks\": [\n    {\"kind\": \"gorenstein\",}\n  ]\n}").unwrap();
    let out = chring(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn unresolved_references_are_config_errors() {
    for args in [
        vec!["gorenstein", "--pair", "G2>T2"],
        vec!["resolve", "--ring", "E8"],
        vec!["resolve", "--ring", "T2", "--module", "cube"],
        vec!["freeness"],
        vec!["gorenstein", "--pair", "SO(2)>1", "--window", "5:1"],
    ] {
        let out = chring(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn failed_verification_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = r#"{
      "name": "wrong",
      "signatures": {"s": {
        "categories": ["X"],
        "functors": [],
        "cells": [{"name": "e", "source": [], "target": [], "category": "X"}]
      }},
      "diagrams": [{
        "name": "a scalar is the identity",
        "signature": "s",
        "lhs": {"category": "X", "layers": [{"left": [], "cell": "e", "right": []}]},
        "rhs": {"source": [], "category": "X", "layers": []}
      }]
    }"#;
    std::fs::write(dir.path().join("wrong.json"), corpus).unwrap();
    let config = r#"{"schema": 1, "tasks": [{"kind": "mates-verify", "corpus": "wrong.json"}]}"#;
    std::fs::write(dir.path().join("config.json"), config).unwrap();
    let out = chring(&["run", dir.path().join("config.json").to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json_report(&out);
    assert_eq!(r["passed"], false);
    assert_eq!(r["tasks"][0]["result"]["corpora"][0]["diagrams"][0]["verdict"], "not-proved");
}

const MIXED: &str = r#"{
  "schema": 1,
  "window": "-12:12",
  "tasks": [
    {"kind": "gorenstein", "pair": "U(2)>T2"},
    {"kind": "resolve", "module": {"ring": "U(2)", "generators": [0], "relations": [["c1^2"], ["c2"]]}},
    {"kind": "tor", "ring": "T2", "module": "field", "other": "ring"},
    {"kind": "ext", "ring": "SO(2)", "module": "field", "other": "ring"},
    {"kind": "local-cohomology", "ring": "T2", "window": "-10:4"},
    {"kind": "torsion", "module": {"ring": "T2", "generators": [0, 2], "relations": [["t1", "0"], ["t2", "0"]]}},
    {"kind": "base-change", "pair": "U(2)>T2", "module": "field", "window": "-6:6"},
    {"kind": "freeness", "pair": "SU(3)>SU(2)"},
    {"kind": "shift-iso", "pair": "SU(3)>SU(2)", "module": "target"},
    {"kind": "mates-verify", "corpus": "section-4", "depth": 6}
  ]
}"#;

#[test]
fn mixed_config_runs_in_order_and_passes() {
    let r = run_text(MIXED);
    assert!(r.passed, "{}", r.to_table());
    let kinds: Vec<String> = r.tasks.iter().map(|t| t.kind.to_string()).collect();
    assert_eq!(
        kinds,
        [
            "gorenstein", "resolve", "tor", "ext", "local-cohomology", "torsion",
            "base-change", "freeness", "shift-iso", "mates-verify"
        ]
    );
    assert!(r.tasks.iter().all(|t| t.verdict == Verdict::Pass));
    assert_eq!(r.tasks[1].result["betti"], serde_json::json!([1, 2, 1]));
    assert_eq!(r.tasks[4].inputs["window"], "-10:4");
    assert_eq!(r.tasks[1].inputs["window"], "-12:12");
    assert_eq!(r.tasks[9].inputs["depth"], 6);
    let tors = &r.tasks[5].result["torsion"];
    assert!(tors.as_array().unwrap().iter().any(|d| d.as_u64() > Some(0)));
    assert!(r.tasks[4].certification.is_some());
}

#[test]
fn report_round_trips_and_is_deterministic() {
    let a = run_text(MIXED);
    let parsed: Report = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(parsed, a);
    let b = run_text(MIXED);
    assert_eq!(a.without_timing().to_json(), b.without_timing().to_json());
}

#[test]
fn table_format_lists_every_task() {
    let out = chring(&["freeness", "--pair", "T3>T2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS] #0 freeness"), "{text}");
    assert!(text.contains("free false  equal rank false"), "{text}");
}

#[test]
fn window_flag_accepts_negative_bounds() {
    let out = chring(&["local-cohomology", "--ring", "SO(2)", "--window", "-6:2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_report(&out);
    assert_eq!(r["settings"]["window"], "-6:2");
    let h1 = &r["tasks"][0]["result"]["koszul"]["table"]["rows"][1];
    assert_eq!(h1, &serde_json::json!([1, 0, 1, 0, 1, 0, 0, 0, 0]));
}
