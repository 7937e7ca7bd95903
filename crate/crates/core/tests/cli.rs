//! End-to-end tests of the command-line interface: exit codes, JSON
//! round trips, and byte-level determinism of the reports.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_drgdesc"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn construct_emits_exchange_format() {
    let out = run(&["construct", "--family", "hamming", "--params", "3,2"]);
    let j = stdout_json(&out);
    assert_eq!(j["n"], 8);
    assert_eq!(j["labels"].as_array().unwrap().len(), 8);
    assert_eq!(j["edges"].as_array().unwrap().len(), 12);
}

#[test]
fn budget_exceeded_exits_3() {
    let out = run(&["construct", "--family", "johnson", "--params", "99,3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn invalid_config_exits_2() {
    let out = run(&["construct", "--family", "nosuch", "--params", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["descendents", "--family", "hamming", "--params", "3,2", "--mode", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["analyze"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exhaustive_cap_exits_3() {
    let out = run(&[
        "descendents",
        "--family",
        "doob",
        "--params",
        "1,1",
        "--mode",
        "exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn analyze_reports_scheme_data() {
    let out = run(&["analyze", "--family", "hamming", "--params", "3,2"]);
    let j = stdout_json(&out);
    assert_eq!(j["schema"], "drgdesc/1");
    assert_eq!(j["eigenvalues"], serde_json::json!(["3/1", "1/1", "-1/1", "-3/1"]));
    assert_eq!(j["multiplicities"], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(j["qpoly_orderings"].as_array().unwrap().len(), 1);
    assert_eq!(j["classical"]["q"], 1);
}

#[test]
fn verify_all_hamming_passes_with_27_descendents() {
    let out = run(&["verify-all", "--family", "hamming", "--params", "3,2"]);
    assert_eq!(out.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(j["descendent_count"], 27);
    assert_eq!(j["passed"], true);
}

#[test]
fn verify_all_bytes_identical_across_runs_and_threads() {
    let a = run(&["verify-all", "--family", "hamming", "--params", "4,2", "--threads", "1"]);
    let b = run(&["verify-all", "--family", "hamming", "--params", "4,2", "--threads", "1"]);
    let c = run(&["verify-all", "--family", "hamming", "--params", "4,2", "--threads", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn leonard_fit_descend_pipeline() {
    let dir = std::env::temp_dir().join(format!("drgdesc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let fit_path: PathBuf = dir.join("fit.json");
    let array_path: PathBuf = dir.join("array.json");

    let out = run(&[
        "leonard",
        "fit",
        "--family",
        "hamming",
        "--params",
        "4,2",
        "--out",
        fit_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let fit: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&fit_path).unwrap()).unwrap();
    assert_eq!(fit["array"]["case"], "IIC");
    std::fs::write(&array_path, serde_json::to_string(&fit["array"]).unwrap()).unwrap();

    // expand the fitted array
    let out = run(&["leonard", "expand", "--in", array_path.to_str().unwrap()]);
    let j = stdout_json(&out);
    assert_eq!(j["theta"].as_array().unwrap().len(), 5);

    // transform to the diameter-2 descendent: the 2-cube array {2,1;1,2}
    let out = run(&[
        "leonard",
        "descend",
        "--in",
        array_path.to_str().unwrap(),
        "--dprime",
        "2",
        "--rho",
        "0",
    ]);
    let j = stdout_json(&out);
    assert_eq!(j["case"], "IIC");
    assert_eq!(j["d"], 2);

    // invalid transform request exits 2
    let out = run(&[
        "leonard",
        "descend",
        "--in",
        array_path.to_str().unwrap(),
        "--dprime",
        "9",
    ]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn graph_json_ingestion_verifies_and_analyzes() {
    let dir = std::env::temp_dir().join(format!("drgdesc-gj-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cube.json");

    let out = run(&["construct", "--family", "hamming", "--params", "3,2"]);
    std::fs::write(&path, &out.stdout).unwrap();

    let out = run(&["verify-all", "--graph-json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let j: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(j["descendent_count"], 27);

    // a non-distance-regular graph is rejected during ingestion
    let bad = serde_json::json!({
        "n": 4,
        "labels": ["a", "b", "c", "d"],
        "edges": [[0, 1], [1, 2], [2, 3]]
    });
    std::fs::write(&path, serde_json::to_string(&bad).unwrap()).unwrap();
    let out = run(&["analyze", "--graph-json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn qmatroid_reports_doob_ud_failure() {
    let out = run(&["qmatroid", "--family", "doob", "--params", "1,1"]);
    let j = stdout_json(&out);
    assert_eq!(j["family_size"], 85);
    assert_eq!(j["complete"], true);
    let ud: Vec<bool> = serde_json::from_value(j["ud_property"].clone()).unwrap();
    assert!(ud.iter().any(|&x| !x));
    assert!(!j["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn size_budget_env_override() {
    // default budget rejects J(50,3); a raised budget admits J(18,2)
    // (C(18,2) = 153 > a lowered budget of 100)
    let out = bin()
        .args(["construct", "--family", "johnson", "--params", "18,2"])
        .env("DRGDESC_SIZE_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = bin()
        .args(["construct", "--family", "johnson", "--params", "18,2"])
        .env("DRGDESC_SIZE_BUDGET", "200")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn halved_cube_verify_all_reports_widths_one_and_two() {
    let out = run(&["verify-all", "--family", "halved_cube", "--params", "6", "--samples", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(j["nontrivial_widths"], serde_json::json!([1, 2]));
    // timings go to stderr, never into the report
    assert!(String::from_utf8_lossy(&out.stderr).contains("timing"));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("timing"));
}

#[test]
fn descendents_text_mode() {
    let out = run(&[
        "descendents",
        "--family",
        "hamming",
        "--params",
        "3,2",
        "--format",
        "text",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("27 descendents"));
}
