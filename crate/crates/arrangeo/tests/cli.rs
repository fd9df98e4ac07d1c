mod common;

use std::io::Write;

use arrangeo::cli::run;
use arrangeo::exact::geometry::Arrangement;
use arrangeo::io::arrangement_to_json;
use arrangeo::presentation::abelianization;
use arrangeo::presentation::format::parse_text;
use serde_json::Value;
use tempfile::NamedTempFile;

fn file_with(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn arrangement_file(arr: &Arrangement) -> NamedTempFile {
    file_with(&arrangement_to_json(arr).to_string())
}

fn arrangeo(args: &[&str], f: &NamedTempFile) -> (i32, String) {
    let mut argv = vec!["arrangeo".to_string(), args[0].to_string(), f.path().display().to_string()];
    argv.extend(args[1..].iter().map(|s| s.to_string()));
    let out = run(argv);
    (out.code, out.output)
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

const CROSSING_LINES: &str = r#"{"lines":[{"a":0,"b":1,"c":0},{"a":1,"b":-1,"c":0}]}"#;

#[test]
fn pi1_of_two_crossing_lines() {
    let (code, out) = arrangeo(&["pi1"], &file_with(CROSSING_LINES));
    assert_eq!(code, 0);
    assert!(out.starts_with("gens 2\n"));
    assert_eq!(out.matches("rel comm:").count(), 1);
}

#[test]
fn repeated_runs_are_identical() {
    let f = arrangement_file(&common::graph_com2());
    for cmd in ["lattice", "monodromy", "pi1", "graph", "cfg", "structure"] {
        assert_eq!(arrangeo(&[cmd], &f), arrangeo(&[cmd], &f), "{cmd}");
    }
}

#[test]
fn exit_codes() {
    let tangent = file_with(r#"{"lines":[{"a":0,"b":1,"c":-1}],"conics":[{"coeffs":[1,0,1,0,0,-1]}]}"#);
    assert_eq!(arrangeo(&["validate"], &tangent).0, 1);
    assert_eq!(arrangeo(&["pi1"], &tangent).0, 1);
    assert_eq!(arrangeo(&["pi1"], &file_with("{\"lines\": [")).0, 2);
    let f = file_with(CROSSING_LINES);
    assert_eq!(arrangeo(&["validate"], &f).0, 0);
    assert_eq!(arrangeo(&["pi1", "--basepoint", "7:left"], &f).0, 2);
    let missing = run(["arrangeo", "pi1", "/nonexistent/arrangement.json"].map(String::from));
    assert_eq!(missing.code, 2);
    assert_eq!(run(["arrangeo", "pi1"].map(String::from)).code, 2);
}

#[test]
fn structure_report_fields() {
    let (code, out) = arrangeo(&["structure"], &arrangement_file(&common::graph_com2()));
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["outcome"], "decomposed");
    for key in ["theorem", "r", "free_ranks", "identities_checked", "reason"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let (_, text) = arrangeo(&["structure", "--format", "text"], &arrangement_file(&common::ceva()));
    assert!(text.starts_with("outside_theorems"));
}

#[test]
fn monodromy_report_fields() {
    let (code, out) = arrangeo(&["monodromy"], &arrangement_file(&common::example_skel()));
    assert_eq!(code, 0);
    let v = json(&out);
    let events = v["events"].as_array().unwrap();
    assert_eq!(events.len(), 4);
    assert_eq!(events[3]["kind"], "multiple:3");
    assert_eq!(events[0]["words"].as_array().unwrap().len(), 2);
}

#[test]
fn graph_formats() {
    let f = arrangement_file(&common::graph_com2());
    let (_, dot) = arrangeo(&["graph"], &f);
    assert!(dot.starts_with("graph G {"));
    let (_, js) = arrangeo(&["graph", "--format", "json"], &f);
    assert_eq!(json(&js)["vertices"].as_array().unwrap().len(), 3);
    let (_, cfg) = arrangeo(&["cfg"], &f);
    assert_eq!(json(&cfg)["verdict"]["is_cfg"], true);
}

#[test]
fn verify_conic_example() {
    let (code, out) = arrangeo(&["verify", "--oracle", "S3"], &arrangement_file(&common::graph_com2()));
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["abelianization", "rank_identity", "homs_S3"]);
}

#[test]
fn basepoint_keeps_abelianization() {
    let f = arrangement_file(&common::example_skel());
    let (code, moved) = arrangeo(&["pi1", "--basepoint", "2:left"], &f);
    assert_eq!(code, 0);
    let p = parse_text(&moved).unwrap();
    assert_eq!(abelianization(&p).rank, 4);
    let (_, simplified) = arrangeo(&["simplify", "--basepoint", "2:left", "--format", "text"], &f);
    assert!(simplified.starts_with("conjugation-free") || simplified.starts_with("unresolved"));
}
