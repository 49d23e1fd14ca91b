//! The binary end to end: exact outputs, byte stability and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pairahedra")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn outputs_are_byte_stable() {
    let commands: &[&[&str]] = &[
        &["enumerate", "I2,1", "1"],
        &["--format", "json", "enumerate", "M1,2", "2"],
        &["boundary", "q", "((* * *) ; id ; [])"],
        &["diagonal", "I3,0"],
        &["--format", "json", "diagonal", "T4"],
        &["qmap", "({(* *) ; | ; *} ; [3,1,2,4])"],
        &["--dot", "homology", "I2,0", "--q"],
        &["--dot", "enumerate", "M1,1", "0"],
        &["tensor-ainf", "unital-toy", "two-term", "--arity", "4"],
    ];
    for args in commands {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn composition_of_two_binary_corollas() {
    // one-edge tree (μ₂ ∘₁ μ₂) carries (−1)^{i(j+1)+jl} = (−1)^7
    let out = stdout(&["compose", "c", "((* *) ; id ; [])", "1", "((* *) ; id ; [])"]);
    assert_eq!(out, "-1 * (((* *) *) ; id ; [1-2])\n");
}

#[test]
fn hexagon_report() {
    let out = stdout(&["homology", "I1,1"]);
    assert_eq!(out, "shape I1,1\ncomplex cellular\nf-vector 6 6 1\nbetti 1 0 0\neuler 1\nacyclic true\n");
    let json: serde_json::Value = serde_json::from_str(&stdout(&["--format", "json", "homology", "I2,0", "--q"])).unwrap();
    assert_eq!(json["f_vector"], serde_json::json!([11, 15, 5]));
    assert_eq!(json["euler"], 1);
}

#[test]
fn extremes_and_order() {
    let out = stdout(&["minmax", "(* * * *)"]);
    assert_eq!(out, "min (((* *) *) *)\nmax (* (* (* *)))\n");
    assert_eq!(stdout(&["leq", "(((* *) *) *)", "(* (* (* *)))"]), "true\n");
    assert_eq!(stdout(&["leq", "(* (* (* *)))", "(((* *) *) *)"]), "false\n");
}

#[test]
fn pentagon_as_dot() {
    let poset = stdout(&["--dot", "enumerate", "T4", "0"]);
    assert!(poset.starts_with("digraph \"T4\" {"));
    assert_eq!(poset.matches(" -> ").count(), 5);
    let complex = stdout(&["--dot", "homology", "T4"]);
    assert_eq!(complex.matches("[label=\"(").count(), 11);
    assert_eq!(complex.matches(" -> ").count(), 5 * 2 + 5);
}

#[test]
fn boundary_text_and_json_agree() {
    let g = "((* * * *) ; id ; [])";
    let text = stdout(&["boundary", "c", g]);
    let json: Vec<serde_json::Value> = serde_json::from_str(&stdout(&["--format", "json", "boundary", "c", g])).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert_eq!(json.len(), 5);
    // each printed term reads back as the same generator
    for (line, j) in text.lines().zip(&json) {
        let again = stdout(&["boundary", "c", line]);
        let via_json = stdout(&["boundary", "c", &j.to_string()]);
        assert_eq!(again, via_json, "{line}");
    }
}

#[test]
fn shipped_fixture_files_match_the_builtins() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for name in ["frobenius", "two-term", "mu3-toy", "unital-toy"] {
        let path = dir.join(format!("{name}.json"));
        let file = std::fs::read_to_string(&path).unwrap();
        assert_eq!(stdout(&["fixture", path.to_str().unwrap()]), file, "{name}");
        assert_eq!(stdout(&["fixture", name]), file, "{name}");
    }
}

#[test]
fn tensor_products_of_fixtures() {
    let out = stdout(&["tensor-ainf", "frobenius", "two-term", "--arity", "3"]);
    assert!(out.starts_with("basis 1|u 1|v x|u x|v\n"), "{out}");
    assert!(out.ends_with("structure relations hold up to 3 leaves\n"));
}

#[test]
fn errors_and_exit_codes() {
    let bad = run(&["boundary", "c", "((* *) ; id ; [1-2])"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error:"));
    assert_eq!(run(&["verify", "--max-leaves", "3"]).status.code(), Some(2));
    assert_eq!(run(&["--dot", "leq", "(* *)", "(* *)"]).status.code(), Some(2));
    assert_eq!(run(&["homology", "T9"]).status.code(), Some(2));
}

#[test]
fn verify_reports_the_display_discrepancy() {
    let out = run(&["verify", "--max-leaves", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.ends_with("failing criteria: 8\n"), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("criterion ")).count(), 9);
    let json: serde_json::Value =
        serde_json::from_slice(&run(&["--format", "json", "verify", "--max-leaves", "4"]).stdout).unwrap();
    assert_eq!(json["passed"], false);
    assert_eq!(json["criteria"].as_array().unwrap().len(), 9);
}
