//! End-to-end tests of the `phi` binary: exit codes, file outputs, and
//! byte-stability of reports across thread counts.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn phi() -> Command {
    Command::new(env!("CARGO_BIN_EXE_phi"))
}

fn run(args: &[&str]) -> Output {
    phi().args(args).output().expect("spawning phi")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn scratch_dir(test: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("phi-cli-{}-{test}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn build_writes_canonical_table() {
    let dir = scratch_dir("build");
    let out = dir.join("z6.tbl");
    let result = run(&[
        "build",
        r#"{"kind":"cyclic","n":6}"#,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{}", stderr(&result));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next(), Some("6"));
    assert_eq!(text.lines().count(), 7);
    assert_eq!(text.lines().nth(1), Some("0 1 2 3 4 5"));
}

#[test]
fn build_quaternion_spectrum() {
    let dir = scratch_dir("build-q8");
    let out = dir.join("q8.tbl");
    let result = run(&[
        "build",
        r#"{"kind":"generalized_quaternion","order":8}"#,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    let analyze = run(&["analyze", out.to_str().unwrap()]);
    assert!(analyze.status.success());
    assert!(stdout(&analyze).contains("spectrum     1:1 2:1 4:6"));
}

#[test]
fn build_rejects_modular_p2_with_hint() {
    let dir = scratch_dir("build-m8");
    let out = dir.join("m8.tbl");
    let result = run(&[
        "build",
        r#"{"kind":"modular_M_p3","p":2}"#,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(2));
    assert!(stderr(&result).contains("dihedral(8)"));
    assert!(!out.exists());
}

#[test]
fn analyze_verdict_exit_codes() {
    let z12 = run(&["analyze", r#"{"kind":"cyclic","n":12}"#, "--verdict"]);
    assert_eq!(z12.status.code(), Some(0));
    assert!(stdout(&z12).contains("agrees       true"));

    // A divisibility witness alone is not a failure; exit 1 is reserved for
    // a false agrees flag.
    let d8 = run(&["analyze", r#"{"kind":"dihedral","order":8}"#, "--verdict"]);
    assert_eq!(d8.status.code(), Some(0));
    let text = stdout(&d8);
    assert!(text.contains("cond2        false"));
    assert!(text.contains("= 3 does not divide"));
    assert!(text.contains("agrees       true"));
}

#[test]
fn analyze_schmidt_report() {
    let a4 = run(&["analyze", r#"{"kind":"alternating","n":4}"#, "--schmidt"]);
    assert_eq!(a4.status.code(), Some(0));
    let text = stdout(&a4);
    assert!(text.contains("schmidt      p=2 q=3 m=2 n=1 r=2"));
    assert!(text.contains("quotient_schmidt           true"));
    assert!(!text.contains("false"));

    let z6 = run(&["analyze", r#"{"kind":"cyclic","n":6}"#, "--schmidt"]);
    assert_eq!(z6.status.code(), Some(0));
    assert!(stdout(&z6).contains("not a Schmidt group"));
}

#[test]
fn analyze_writes_dot_and_json() {
    let dir = scratch_dir("analyze-files");
    let dot = dir.join("d8.dot");
    let json = dir.join("d8.json");
    let result = run(&[
        "analyze",
        r#"{"kind":"dihedral","order":8}"#,
        "--verdict",
        "--dot",
        dot.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0));

    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert!(dot_text.starts_with("digraph subgroup_lattice"));
    assert!(dot_text.contains("color=red"));
    assert_eq!(dot_text.matches("label=").count(), 10);

    let json_text = std::fs::read_to_string(&json).unwrap();
    let value: serde_json::Value = serde_json::from_str(&json_text).unwrap();
    assert_eq!(value["phi_report"]["phi"], 2);
    assert_eq!(value["verdict"]["agrees"], true);
    assert_eq!(value["verdict"]["cond2"]["holds"], false);
    assert_eq!(value["verdict"]["cond2"]["witness"]["phi_sub"], 3);
    assert_eq!(value["verdict"]["sylow_shapes"]["2"], "other");
    assert_eq!(value["lattice"]["subgroups"].as_array().unwrap().len(), 10);
}

#[test]
fn analyze_rejects_garbage() {
    let dir = scratch_dir("analyze-garbage");
    let bad = dir.join("bad.tbl");
    std::fs::write(&bad, "3\n0 1 2\n1 2 0\n2 0 2\n").unwrap();
    let result = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));

    let missing = run(&["analyze", dir.join("nope.tbl").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));

    let bad_json = run(&["analyze", r#"{"kind":"nonsense"}"#]);
    assert_eq!(bad_json.status.code(), Some(2));
}

#[test]
fn verify_catalog_from_file_with_cayley_entry() {
    let dir = scratch_dir("verify-file");
    std::fs::write(
        dir.join("z4.tbl"),
        "4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n",
    )
    .unwrap();
    let catalog = dir.join("catalog.json");
    std::fs::write(
        &catalog,
        r#"{"entries":[
            {"name":"Z4-from-file","descriptor":{"kind":"cayley_file","path":"z4.tbl"}},
            {"name":"S3","descriptor":{"kind":"symmetric","n":3}}
        ]}"#,
    )
    .unwrap();
    let out_dir = dir.join("out");
    let result = run(&[
        "verify-catalog",
        "--catalog",
        catalog.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0), "{}", stderr(&result));
    let tsv = std::fs::read_to_string(out_dir.join("summary.tsv")).unwrap();
    assert!(tsv.contains("Z4-from-file\t4\t4\t2\t"));
    assert!(out_dir.join("report.json").exists());
}

#[test]
fn verify_catalog_rejects_corrupt_cayley_file() {
    let dir = scratch_dir("verify-corrupt");
    std::fs::write(
        dir.join("bad.tbl"),
        "4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 1\n",
    )
    .unwrap();
    let catalog = dir.join("catalog.json");
    std::fs::write(
        &catalog,
        r#"{"entries":[{"name":"bad","descriptor":{"kind":"cayley_file","path":"bad.tbl"}}]}"#,
    )
    .unwrap();
    let result = run(&[
        "verify-catalog",
        "--catalog",
        catalog.to_str().unwrap(),
        "--out",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn default_catalog_run_is_green_and_thread_stable() {
    let dir = scratch_dir("verify-default");
    let out1 = dir.join("run1");
    let out2 = dir.join("run2");
    let first = run(&[
        "verify-catalog",
        "--out",
        out1.to_str().unwrap(),
        "--parallel",
        "1",
    ]);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    assert!(stdout(&first).contains("all 67 entries ok"));
    let second = run(&[
        "verify-catalog",
        "--out",
        out2.to_str().unwrap(),
        "--parallel",
        "4",
    ]);
    assert_eq!(second.status.code(), Some(0));

    let json1 = std::fs::read(out1.join("report.json")).unwrap();
    let json2 = std::fs::read(out2.join("report.json")).unwrap();
    assert_eq!(json1, json2, "report.json differs across thread counts");
    let tsv1 = std::fs::read(out1.join("summary.tsv")).unwrap();
    let tsv2 = std::fs::read(out2.join("summary.tsv")).unwrap();
    assert_eq!(tsv1, tsv2);

    let report: serde_json::Value = serde_json::from_slice(&json1).unwrap();
    assert_eq!(report["all_ok"], true);
    assert_eq!(report["entries"].as_array().unwrap().len(), 67);
    assert_eq!(
        report["nonnilpotent_with_positive_subgroup_phi"]
            .as_array()
            .unwrap()
            .len(),
        0
    );
    let q8 = report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == "Q8")
        .unwrap();
    assert_eq!(q8["phi_report"]["phi"], 6);
    assert_eq!(q8["p_group_check"], true);
    assert_eq!(q8["verdict"]["sylow_shapes"]["2"], "Q8");
}

#[test]
fn catalog_dump_matches_shipped_file() {
    let dump = run(&["catalog"]);
    assert!(dump.status.success());
    let shipped = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join("catalog/default.json");
    let shipped_text = std::fs::read_to_string(shipped).expect("shipped catalog file");
    assert_eq!(stdout(&dump), shipped_text);
}
