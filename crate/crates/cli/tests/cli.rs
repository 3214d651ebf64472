use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn kanmeasure(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kanmeasure")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let mut all: Vec<&str> = args.to_vec();
    let out_str = out.to_str().unwrap();
    all.extend(["--json", out_str]);
    let o = kanmeasure(&all);
    let text = std::fs::read_to_string(&out).unwrap_or_else(|_| panic!("{}", String::from_utf8_lossy(&o.stderr)));
    (o.status.code().unwrap(), serde_json::from_str(&text).unwrap())
}

#[test]
fn m1_outer_closure() {
    let (code, r) = run_json(&["run", example("m1_outer.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    let values = &r["output"]["overline"]["values"];
    assert_eq!(values["{0,1,2}"], "3");
    assert_eq!(values["{0,1}"], "2");
    assert_eq!(values["{1}"], "1");
    assert_eq!(r["output"]["validation"]["premeasure"], false);
}

#[test]
fn empty_algebra_is_trivial() {
    let (code, r) = run_json(&["run", example("empty_algebra.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["output"]["algebra"]["elements"], serde_json::json!(["{}", "{0}"]));
    for op in ["overline", "underline", "reflect"] {
        assert_eq!(r["output"][op]["values"]["{0}"], "5/2", "{op}");
    }
}

#[test]
fn counterexample_certificate() {
    let (code, r) = run_json(&["run", example("counterexample.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["output"]["counterexample"]["conclusion"], "contradiction: 0 ≠ ∞");
    assert_eq!(r["checks"][0]["status"], "pass");
}

#[test]
fn engine_scenario_with_extension() {
    let (code, r) = run_json(&["run", example("chain_engine.json").to_str().unwrap(), "--samples", "50"]);
    assert_eq!(code, 0, "{r}");
    let left = &r["output"]["extensions"]["id"]["left"]["value"]["A"];
    assert_eq!(left, &serde_json::json!(["0", "0", "1"]));
    assert_eq!(r["summary"]["fail"], 0);
}

#[test]
fn failing_checks_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    // declared premeasure, but 1 + 1 ≠ 1 on the whole set
    let text = std::fs::read_to_string(example("m1_outer.json")).unwrap().replace("\"outer\"", "\"premeasure\"");
    std::fs::write(&path, text).unwrap();
    let o = kanmeasure(&["run", path.to_str().unwrap(), "--samples", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL declared kind"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let float = dir.path().join("float.json");
    std::fs::write(
        &float,
        r#"{"kind": "measure", "table": {"ground": 1, "atoms": [[0]], "values": {"{}": "0", "{0}": 0.5}, "kind": "general"}}"#,
    )
    .unwrap();
    let missing = dir.path().join("missing.json");
    for path in [&float, &missing] {
        let o = kanmeasure(&["run", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let o = kanmeasure(&["run", float.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("float.json: at table.values.{0}"));
    assert_eq!(kanmeasure(&["suite", "nope"]).status.code(), Some(2));
}

#[test]
fn suite_reports_are_deterministic() {
    let a = run_json(&["suite", "carath", "--seed", "7"]);
    let b = run_json(&["suite", "carath", "--seed", "7"]);
    assert_eq!(a.0, 0);
    assert_eq!(serde_json::to_string(&a.1).unwrap(), serde_json::to_string(&b.1).unwrap());
    assert_eq!(a.1["seed"], 7);
}

#[test]
fn measure_suite_passes() {
    let (code, r) = run_json(&["suite", "measure", "--seed", "7", "--samples", "50"]);
    assert_eq!(code, 0, "{r}");
}

#[test]
fn zero_samples_skip_sampled_checks() {
    let (code, r) = run_json(&["suite", "engine", "--samples", "0"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["summary"]["fail"], 0);
}

#[test]
fn schema_lists_every_kind() {
    let o = kanmeasure(&["schema"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let kinds: Vec<&str> =
        v["oneOf"].as_array().unwrap().iter().map(|s| s["properties"]["kind"]["const"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["engine", "measure", "carath", "suite"]);
}
