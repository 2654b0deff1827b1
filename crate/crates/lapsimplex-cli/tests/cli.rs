//! End-to-end tests of the command-line surface, driving the built binary.

use std::io::Write;
use std::process::{Command, Output};

fn lapsimplex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lapsimplex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn analyze_named_input_json() {
    let out = lapsimplex(&["analyze", "paper:example1", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["outcome"], "simplex");
    assert_eq!(v["volume"], "4");
    assert_eq!(v["tree_counts"], serde_json::json!(["1", "2", "1"]));
    assert_eq!(v["reflexive"], true);
    assert_eq!(v["dimension"], 2);
}

#[test]
fn analyze_is_byte_deterministic() {
    let a = lapsimplex(&["analyze", "paper:D1prime", "--json"]);
    let b = lapsimplex(&["analyze", "paper:D1prime", "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn analyze_file_roundtrip_through_gen() {
    let gen = lapsimplex(&["gen", "cycle", "5", "1,3"]);
    assert!(gen.status.success());
    let tmp = tempfile_path("cycle");
    let mut f = std::fs::File::create(&tmp).unwrap();
    f.write_all(&gen.stdout).unwrap();
    drop(f);

    let out = lapsimplex(&["analyze", tmp.to_str().unwrap(), "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["complexity"], "7");
    assert_eq!(v["reflexive"], false);
    std::fs::remove_file(&tmp).ok();
}

#[test]
fn analyze_with_idp_flag() {
    let out = lapsimplex(&["analyze", "paper:example1", "--idp", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["idp"]["status"], "checked");
    assert_eq!(v["idp"]["verdict"], true);
}

#[test]
fn analyze_d2prime_carries_note() {
    let out = lapsimplex(&["analyze", "paper:D2prime-printed", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["strongly_connected"], false);
    assert_eq!(v["reflexive"], false);
    let notes = v["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("indegree zero")));
}

#[test]
fn input_errors_exit_one() {
    let tmp = tempfile_path("loop");
    std::fs::write(&tmp, r#"{"n":2,"edges":[[1,1,1]]}"#).unwrap();
    let out = lapsimplex(&["analyze", tmp.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("loop"));
    std::fs::remove_file(&tmp).ok();

    let out = lapsimplex(&["analyze", "paper:no-such-input"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budget_refusals_exit_two() {
    let out = lapsimplex(&["survey-cycles", "3", "9"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn starved_idp_reports_refusal_and_exits_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_lapsimplex"))
        .env("LAPSIMPLEX_BUDGET", "10")
        .args(["analyze", "paper:example1", "--idp", "--json"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // the rest of the analysis is still reported
    assert_eq!(v["volume"], "4");
    assert_eq!(v["idp"]["status"], "refused");
}

#[test]
fn gen_outputs_parseable_digraphs() {
    for args in [
        vec!["gen", "cycle", "6", "-"],
        vec!["gen", "star", "1,2,2"],
        vec!["gen", "nonunimodal", "1", "1", "2"],
    ] {
        let out = lapsimplex(&args);
        assert!(out.status.success(), "{args:?}: {}", stderr(&out));
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert!(v["n"].is_u64(), "{args:?}");
    }
    // invalid family parameters are input errors
    let out = lapsimplex(&["gen", "nonunimodal", "1", "2", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn survey_small_range_text() {
    let out = lapsimplex(&["survey-cycles", "3", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("route mismatches          0"), "{text}");
    assert!(text.contains("C_3^{1,2,3}"), "{text}");
}

#[test]
fn search_triangle_json() {
    let tmp = tempfile_path("triangle");
    std::fs::write(&tmp, r#"{"n":3,"edges":[[1,2],[2,3],[1,3]]}"#).unwrap();
    let out = lapsimplex(&["search", tmp.to_str().unwrap(), "--mode", "orientations", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["total"], 8);
    assert_eq!(v["reflexive"].as_array().unwrap().len(), 2);
    std::fs::remove_file(&tmp).ok();
}

#[test]
fn verify_single_criterion() {
    let out = lapsimplex(&["verify-paper", "--only", "example1", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 1);
    assert_eq!(arr[0]["name"], "example1");
    assert_eq!(arr[0]["passed"], true);
}

#[test]
fn verify_negative_control() {
    let out = lapsimplex(&[
        "verify-paper",
        "--only",
        "matrix-tree",
        "--tamper",
        "tree-counts",
        "--json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.as_array().unwrap()[0]["passed"], false);
}

#[test]
fn inputs_lists_bundled_names() {
    let out = lapsimplex(&["inputs"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in ["example1", "G1", "G2", "D1prime", "D2prime-printed", "D2prime-bidirected"] {
        assert!(text.contains(name), "{text}");
    }
}

fn tempfile_path(tag: &str) -> std::path::PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("lapsimplex-cli-test-{tag}-{}.json", std::process::id()));
    p
}
