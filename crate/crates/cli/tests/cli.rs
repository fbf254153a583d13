use std::process::{Command, Output};

use serde_json::Value;
use witt_core::reslie::{fingerprint, ResLieAlgebra};
use witt_core::surfsing::PowerSeries3;
use witt_core::witt::build_witt;
use witt_core::FieldDescriptor;

fn witt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_witt")).args(args).env_remove("WITT_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cmap_small_primes() {
    assert_eq!(stdout(&witt(&["cmap", "--p", "2"])), "l1\n");
    assert_eq!(stdout(&witt(&["cmap", "--p", "3"])), "l1^2 - l0*l2\n");
}

#[test]
fn cmap_p5_matches_golden_file() {
    let golden = include_str!("../golden/c_p5.txt");
    let out = witt(&["cmap", "--p", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), golden);
}

#[test]
fn cmap_json_lists_terms() {
    let v: Value = serde_json::from_str(&stdout(&witt(&["cmap", "--p", "3", "--json"]))).unwrap();
    assert_eq!(v["vars"], serde_json::json!(["l0", "l1", "l2", "w"]));
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(witt(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(witt(&["verify", "--suite", "axioms", "--p", "4"]).status.code(), Some(2));
    assert_eq!(witt(&["cmap"]).status.code(), Some(2));
    assert_eq!(witt(&["classify-subalgebras", "--p", "5"]).status.code(), Some(2));
}

#[test]
fn seed_comes_from_environment_when_not_given() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_witt"));
        cmd.args(["verify", "--suite", "jacobson", "--json"]).args(extra).env_remove("WITT_SEED");
        if let Some(s) = env {
            cmd.env("WITT_SEED", s);
        }
        let v: Value = serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap();
        v["seed"].as_u64().unwrap()
    };
    assert_eq!(run(None, &[]), 0);
    assert_eq!(run(Some("17"), &[]), 17);
    assert_eq!(run(Some("17"), &["--seed", "4"]), 4);
    let bad = Command::new(env!("CARGO_BIN_EXE_witt"))
        .args(["verify", "--suite", "jacobson"])
        .env("WITT_SEED", "x")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn structure_constants_round_trip() {
    let out = witt(&["emit", "structure-constants", "--p", "3", "--omega", "1"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let parsed = ResLieAlgebra::from_json(&v).unwrap();
    let direct = build_witt(&FieldDescriptor::prime(3).unwrap().from_int(1)).unwrap();
    assert_eq!(fingerprint(&parsed, 1).unwrap(), fingerprint(direct.algebra(), 1).unwrap());
    assert_eq!(parsed.bracket_constants(), direct.algebra().bracket_constants());
    assert_eq!(parsed.pmap_constants(), direct.algebra().pmap_constants());
}

#[test]
fn adetect_reads_a_series_file() {
    let f = FieldDescriptor::prime(5).unwrap();
    let g = PowerSeries3::from_ints(&f, 12, &[([1, 1, 0], 1), ([0, 0, 3], 2), ([0, 0, 4], 1)]);
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("adetect_a2.json");
    std::fs::write(&path, g.to_json().to_string()).unwrap();
    let out = witt(&["surfaces", "adetect", "--input", path.to_str().unwrap(), "--precision", "12"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["label"], "A2");
    assert_eq!(v["verified"], true);
}

#[test]
fn classification_table_at_p3() {
    let out = witt(&["classify-subalgebras", "--p", "3", "--json"]);
    assert!(out.status.success());
    let rows: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.len(), 12);
    let count = |name: &str| rows.iter().filter(|r| r["matches"] == serde_json::json!([name])).count();
    assert_eq!((count("k"), count("gl1"), count("k x| gl1")), (3, 6, 3));
}

#[test]
fn non_normality_witness_prints_the_conjugate() {
    let out = witt(&["autgroup", "--p", "3", "--check", "witness"]);
    assert!(out.status.success());
    assert!(!stdout(&out).trim().is_empty());
}
