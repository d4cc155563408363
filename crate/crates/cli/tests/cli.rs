use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tddel_core::tdsystem::verify_verdict;
use tddel_core::{FeasibilityVerdict, PointConfiguration, Representation, SimplicialComplex};

const TRIANGLE: &str = r#"{"d":3,"elements":["a","b","c"],"orders":[["b","c","a"],["a","c","b"],["a","b","c"]]}"#;
const COUNTEREXAMPLE: &str = r#"{"d":4,"elements":["a","b","c","d","e","f","g","h"],"orders":[
    ["b","c","d","e","g","f","h","a"],["a","c","d","e","h","f","g","b"],
    ["a","b","d","f","g","e","h","c"],["a","b","c","f","h","e","g","d"]]}"#;
const PLANAR: &str = r#"{"points":{"p1":["0","0"],"p2":["2","1"],"p3":["1","2"],"p4":["3","5/2"],"p5":["-1","4"]}}"#;

fn tddel(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tddel"))
        .args(args)
        .env("TDDEL_THREADS", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok_json(args: &[&str], stdin: &str) -> Value {
    let out = tddel(args, stdin);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn sigma_of_triangle() {
    let v = ok_json(&["sigma"], TRIANGLE);
    assert_eq!(v["facets"], serde_json::json!([["a", "b", "c"]]));
}

#[test]
fn decide_both_branches() {
    let feasible = ok_json(&["decide"], TRIANGLE);
    assert_eq!(feasible["verdict"], "feasible");
    let r: Representation = serde_json::from_str(TRIANGLE).unwrap();
    let parsed: FeasibilityVerdict = serde_json::from_value(feasible).unwrap();
    assert!(verify_verdict(&r, &parsed));

    let cert = ok_json(&["decide"], COUNTEREXAMPLE);
    assert_eq!(cert["verdict"], "certificate");
    let r: Representation = serde_json::from_str(COUNTEREXAMPLE).unwrap();
    let parsed: FeasibilityVerdict = serde_json::from_value(cert).unwrap();
    assert!(!parsed.is_feasible());
    assert!(verify_verdict(&r, &parsed));
}

#[test]
fn outputs_are_deterministic_and_reparse() {
    for args in [&["sigma"][..], &["decide"], &["realize"], &["system"], &["standard"]] {
        let a = tddel(args, TRIANGLE);
        let b = tddel(args, TRIANGLE);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let c: SimplicialComplex = serde_json::from_value(ok_json(&["sigma"], COUNTEREXAMPLE)).unwrap();
    assert_eq!(serde_json::to_value(&c).unwrap(), ok_json(&["sigma"], COUNTEREXAMPLE));
    let p: PointConfiguration = serde_json::from_value(ok_json(&["realize"], TRIANGLE)).unwrap();
    let points = serde_json::to_string(&p).unwrap();
    let r: Representation = serde_json::from_value(ok_json(&["rep-of"], &points)).unwrap();
    assert_eq!(r.sigma(), serde_json::from_value(ok_json(&["tdd"], &points)).unwrap());
}

#[test]
fn realize_infeasible_is_null() {
    let out = tddel(&["realize"], COUNTEREXAMPLE);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "null");
}

#[test]
fn system_formats() {
    let j = ok_json(&["system"], TRIANGLE);
    assert_eq!(j["rows"].as_array().unwrap().len(), 9);
    assert_eq!(j["cols"].as_array().unwrap().len(), 6);
    assert_eq!(j["entries"].as_array().unwrap().len(), 24);
    let out = tddel(&["system", "--format", "csv"], TRIANGLE);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 25);
    assert!(csv.contains("b,c,1,b,1,-1\n"));
}

#[test]
fn standardness_verbs() {
    let v = ok_json(&["standard"], COUNTEREXAMPLE);
    assert_eq!(v["is_standard"], true);
    let delta = serde_json::to_string(&ok_json(&["sigma"], COUNTEREXAMPLE)).unwrap();
    let v = ok_json(&["standard", "--complex", "--d", "4"], &delta);
    assert_eq!(v["maxima"], serde_json::json!(["a", "b", "c", "d"]));
}

#[test]
fn rectangular_pipeline() {
    let rd = ok_json(&["rdel"], PLANAR);
    let q = ok_json(&["rdel-realize"], PLANAR);
    assert_eq!(q["d"], 4);
    let t = ok_json(&["tdd"], &q.to_string());
    assert_eq!(t, rd);
}

#[test]
fn files_in_and_out() {
    let dir = std::env::temp_dir().join(format!("tddel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("rep.json");
    let output = dir.join("sigma.json");
    std::fs::write(&input, TRIANGLE).unwrap();
    let out = tddel(&["sigma", "--in", input.to_str().unwrap(), "--out", output.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(v["facets"][0], serde_json::json!(["a", "b", "c"]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_input_exits_2() {
    let out = tddel(&["tdd"], r#"{"d":3,"points":{"a":["1/2","1/2","1/2"]}}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("points not on H_d"));
    let out = tddel(&["tdd"], r#"{"d":3,"points":{"a":["1","0","0"],"b":["1","1/2","-1/2"]}}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("coordinate 1"));
    assert_eq!(tddel(&["sigma"], "{not json").status.code(), Some(2));
    assert_eq!(tddel(&["sigma"], r#"{"d":2,"elements":["a"],"orders":[["a"]]}"#).status.code(), Some(2));
    assert_eq!(tddel(&["rdel"], r#"{"points":{"a":["0","0"],"b":["0","1"]}}"#).status.code(), Some(2));
    assert_eq!(tddel(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(tddel(&["sigma", "--in", "/nonexistent/x.json"], "").status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let out = tddel(&["selftest", "--seed", "11", "--samples", "25"], "");
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("7/7 checks passed"));
}

#[test]
fn counterexample_sweep() {
    let v = ok_json(&["counterexample"], "");
    assert_eq!(v["candidates_total"], 31104);
    assert_eq!(v["candidates_matching"], 31104);
    assert_eq!(v["all_infeasible"], true);
    assert_eq!(v["reference_flow_valid"], true);
    assert_eq!(v["feasible_candidates"], serde_json::json!([]));
    assert!(v["original"]["certificate"].as_array().is_some_and(|c| !c.is_empty()));
}
