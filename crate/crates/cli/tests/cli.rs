use std::process::{Command, Output};

use oddprism::graph::odd_prism;
use oddprism::Graph;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddprism")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is json")
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("oddprism-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn construct_prism_emits_graph6() {
    let out = run(&["construct", "--prism", "1"]);
    assert!(out.status.success());
    let line = String::from_utf8(out.stdout).unwrap();
    assert_eq!(line.trim_end(), odd_prism(1).unwrap().to_graph6());
    let g = Graph::from_graph6(line.trim_end()).unwrap();
    assert_eq!((g.order(), g.edge_count()), (6, 9));
}

#[test]
fn construct_json_and_flags() {
    let v = json(&["construct", "--bipartite", "3", "4", "--format", "json"]);
    assert_eq!(v["report"]["edges"], 12);
    let v = json(&["construct", "--turan", "7", "3", "--format", "json"]);
    assert_eq!(v["report"]["edges"], 16);
    let v = json(&["construct", "--ex-construction", "10", "--format", "json"]);
    assert_eq!(v["report"]["edges"], 30);
}

#[test]
fn header_records_invocation() {
    let v = json(&["spex", "--graph6", "Bw"]);
    assert_eq!(v["tool"], "oddprism");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["args"], serde_json::json!(["spex", "--graph6", "Bw"]));
    assert_eq!(v["subcommand"], "spex");
    assert!((v["report"]["spectral"]["radius"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn spex_of_named_construction() {
    let v = json(&["spex", "--candidate", "9"]);
    let r = v["report"]["spectral"]["radius"].as_f64().unwrap();
    assert!((r - (2.0 + 2.0 * 3f64.sqrt())).abs() < 1e-8);
}

#[test]
fn lemma_and_corollary_reports() {
    let v = json(&["lemma24", "--k", "3"]);
    assert_eq!(v["report"]["total"], 16384);
    assert_eq!(v["report"]["checked"], 16384);
    assert_eq!(v["report"]["misses"], 0);
    let v = json(&["corollary25", "--k", "1"]);
    assert_eq!(v["report"]["total"], 64);
    assert_eq!(v["report"]["structural_misses"], 0);
    assert_eq!(v["report"]["word_misses"], 0);
}

#[test]
fn exformula_and_candidate() {
    let v = json(&["exformula", "--n", "10"]);
    assert_eq!(v["report"]["value"], 30);
    assert_eq!(v["report"]["n_a"], 6);
    let v = json(&["candidate", "--n", "9"]);
    assert_eq!(v["report"]["closed_form"]["char_poly"], "x^3 - 24x - 32");
    assert!(v["report"]["power_gap"].as_f64().unwrap() < 1e-8);
}

#[test]
fn checkfree_reports_embedding() {
    let v = json(&["checkfree", "--prism", "1", "--k", "1"]);
    assert_eq!(v["report"]["prism_free"], false);
    assert_eq!(v["report"]["embedding"].as_array().unwrap().len(), 6);
    let v = json(&["checkfree", "--complete", "5", "--k", "1"]);
    assert_eq!(v["report"]["prism_free"], true);
    assert!(v["report"]["embedding"].is_null());
}

#[test]
fn brute_force_certificates() {
    let v = json(&["bruteex", "--n", "6"]);
    let r = &v["report"];
    assert_eq!(r["optimum"], 12);
    assert_eq!(r["formula_comparison"]["formula_value"], 12);
    assert_eq!(r["provenance"], "enumerated");
    let pruned = r["witnesses"].clone();
    let v = json(&["bruteex", "--n", "6", "--unpruned"]);
    assert_eq!(v["report"]["witnesses"], pruned);
    assert_eq!(v["report"]["provenance"], "unpruned");

    let v = json(&["brutespex", "--n", "5"]);
    assert!((v["report"]["optimum"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    assert_eq!(v["report"]["pattern_larger_than_host"], true);
}

#[test]
fn graph6_witness_listing() {
    let out = run(&["bruteex", "--n", "6", "--format", "graph6"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines() {
        let g = Graph::from_graph6(line).unwrap();
        assert_eq!(g.edge_count(), 12);
    }
}

#[test]
fn seedless_runs_are_byte_identical() {
    for args in [
        &["--seedless", "bruteex", "--n", "6"][..],
        &["--seedless", "brutespex", "--n", "6", "--threads", "2"][..],
        &["--seedless", "lemma24", "--k", "2"][..],
        &["--seedless", "corollary25", "--k", "1"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!String::from_utf8_lossy(&a.stdout).contains("elapsed_ms"));
    }
}

#[test]
fn verify_table_csv() {
    let out = run(&["verify", "--n", "6..7", "--k", "1", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# oddprism "));
    assert!(lines[1].starts_with("n,ex_brute,ex_formula"));
    assert!(lines[2].starts_with("6,12,12,"));
    assert!(lines[3].starts_with("7,15,15,"));
    assert_eq!(lines.len(), 4);
}

#[test]
fn ingest_stream_file() {
    let path = scratch("stream.g6");
    std::fs::write(&path, "Bw\nBg\nB?\n").unwrap();
    let v = json(&["ingest", "--in", path.to_str().unwrap(), "--k", "1"]);
    assert_eq!(v["report"]["optimum"], 3);
    assert_eq!(v["report"]["provenance"], "streamed");

    std::fs::write(&path, "Bw\nBx\n").unwrap();
    let out = run(&["ingest", "--in", path.to_str().unwrap(), "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    std::fs::write(&path, "").unwrap();
    let out = run(&["ingest", "--in", path.to_str().unwrap(), "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no graphs"));
}

#[test]
fn out_flag_writes_file() {
    let path = scratch("report.json");
    let out = run(&["--out", path.to_str().unwrap(), "exformula", "--n", "9"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["report"]["value"], 24);
}

#[test]
fn usage_errors_exit_two_without_output() {
    for args in [
        &["bruteex"][..],
        &["construct", "--prism", "1", "--cycle", "5"][..],
        &["construct"][..],
        &["lemma24", "--k", "3", "--format", "graph6"][..],
        &["bruteex", "--n", "9"][..],
        &["spex", "--graph6", "B!"][..],
        &["verify", "--n", "six", "--k", "1"][..],
        &["--threads", "0", "lemma24", "--k", "1"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn usage_error_names_flag() {
    let out = run(&["verify", "--n", "six", "--k", "1"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--n"));
}
