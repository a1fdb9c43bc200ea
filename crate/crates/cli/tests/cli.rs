use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn stabrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabrank"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = stabrank(args);
    assert!(
        out.status.success(),
        "{args:?} exited with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(args: &[&str]) -> i32 {
    stabrank(args).status.code().expect("exit code")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_web_as_dimacs() {
    let out = stabrank(&["generate", "W:8:2", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("p edge 8 16"));
    assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 16);
}

#[test]
fn generate_antiweb_is_five_cycle() {
    let g = json(&["generate", "A:5:2"]);
    assert_eq!(g["n"], 5);
    assert_eq!(g["edges"].as_array().unwrap().len(), 5);
    for v in 1..=5u64 {
        let degree = g["edges"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|e| e[0] == v || e[1] == v)
            .count();
        assert_eq!(degree, 2);
    }
}

#[test]
fn generate_join_keeps_blocks_and_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("join");
    let g = json(&["generate", "join:A:5:2,A:5:2", "--out", path(&prefix)]);
    assert_eq!(g["n"], 10);
    assert_eq!(g["edges"].as_array().unwrap().len(), 5 + 5 + 25);
    assert_eq!(g["family"]["blocks"].as_array().unwrap().len(), 2);
    let from_json = json(&["generate", path(&dir.path().join("join.json"))]);
    assert_eq!(from_json, g);
    let from_dimacs = json(&["generate", path(&dir.path().join("join.dimacs"))]);
    assert_eq!(from_dimacs["edges"], g["edges"]);
}

#[test]
fn graph_ranks() {
    assert_eq!(json(&["rank", "graph", "W:9:2", "disjunctive"])["result"]["rank"], 2);
    assert_eq!(json(&["rank", "graph", "A:9:3", "disjunctive"])["result"]["rank"], 2);
    assert_eq!(json(&["rank", "graph", "W:8:2", "--polyhedral"])["rank"], 2);
    assert_eq!(json(&["rank", "graph", "W:6:2"])["result"]["rank"], 0);
}

#[test]
fn rank_row_n_rank_on_ten_node_web() {
    let r = json(&["rank", "ineq", "rank-constraint", "W:10:2", "N", "--rmax", "1"]);
    assert_eq!(r["rows"][0]["n"]["rank"], 1);
}

#[test]
fn antiweb_and_joined_row_ranks() {
    let a = json(&["rank", "ineq", "antiweb", "A:11:3"]);
    assert_eq!(a["rows"][0]["disjunctive"]["rank"], 2);
    let j = json(&["rank", "ineq", "joined", "join:C:5,C:5"]);
    assert_eq!(j["rows"][0]["disjunctive"]["rank"], 2);
    let q = json(&["rank", "ineq", "cliques", "W:8:2", "--index", "3"]);
    assert_eq!(q["rows"].as_array().unwrap().len(), 1);
    assert_eq!(q["rows"][0]["disjunctive"]["rank"], 0);
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "w2", "--n", "6..10"][..],
        &["verify", "rdfar", "--max-n", "11"][..],
        &["verify", "operators", "--max-n", "9"][..],
        &["verify", "join"][..],
        &["verify", "web-formulas", "--ks", "2,3", "--max-n", "11"][..],
    ] {
        let r = json(args);
        let entries = r["entries"].as_array().unwrap();
        assert!(!entries.is_empty(), "{args:?}");
        assert!(entries.iter().all(|e| e["status"] != "fail"), "{args:?}");
    }
}

#[test]
fn fixed_seed_reports_are_byte_identical() {
    let args = [
        "verify",
        "operators",
        "--max-n",
        "7",
        "--objectives",
        "4",
        "--seed",
        "11",
    ];
    let a = stabrank(&args).stdout;
    let b = stabrank(&args).stdout;
    assert_eq!(a, b);
    let c = stabrank(&[
        "verify",
        "operators",
        "--max-n",
        "7",
        "--objectives",
        "4",
        "--seed",
        "12",
    ])
    .stdout;
    assert_ne!(a, c);
}

#[test]
fn recheck_accepts_genuine_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 4] = [
        &["rank", "graph", "W:10:2"],
        &["rank", "graph", "W:9:2", "--polyhedral"],
        &["rank", "ineq", "rank", "A:11:3"],
        &["rank", "ineq", "one-interval", "W:10:2", "n", "--rmax", "1"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let file = dir.path().join(format!("{i}.json"));
        let mut full = args.to_vec();
        full.extend(["--certificate", path(&file)]);
        json(&full);
        let r = json(&["recheck", path(&file)]);
        assert_eq!(r["failed"], 0, "{args:?}");
        assert!(!r["checks"].as_array().unwrap().is_empty());
    }
    let report = dir.path().join("report.json");
    json(&[
        "verify",
        "web-formulas",
        "--ks",
        "2",
        "--max-n",
        "9",
        "--certificate",
        path(&report),
    ]);
    let r = json(&["recheck", path(&report)]);
    assert_eq!(r["failed"], 0);
    assert_eq!(r["checks"].as_array().unwrap().len(), 8);
}

#[test]
fn recheck_rejects_tampered_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("a.json");
    json(&["rank", "ineq", "rank", "A:11:3", "--certificate", path(&file)]);
    let original: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();

    let mut lower = original.clone();
    lower["rows"][0]["disjunctive"]["rank"] = 1.into();
    lower["rows"][0]["disjunctive"]["witness_f"] = serde_json::json!([1]);
    std::fs::write(&file, lower.to_string()).unwrap();
    assert_eq!(code(&["recheck", path(&file)]), 1);

    let mut moved = original.clone();
    moved["rows"][0]["disjunctive"]["violating_points"][0]["point"][0] = "1".into();
    std::fs::write(&file, moved.to_string()).unwrap();
    assert_eq!(code(&["recheck", path(&file)]), 1);

    let graph = dir.path().join("g.json");
    json(&["rank", "graph", "W:9:2", "--certificate", path(&graph)]);
    let mut g: Value = serde_json::from_str(&std::fs::read_to_string(&graph).unwrap()).unwrap();
    g["result"]["rank"] = 1.into();
    g["result"]["deletion_set"] = serde_json::json!([1]);
    std::fs::write(&graph, g.to_string()).unwrap();
    assert_eq!(code(&["recheck", path(&graph)]), 1);
}

#[test]
fn hull_of_five_cycle() {
    let h = json(&["hull", "C:5"]);
    let facets = h["facets"].as_array().unwrap();
    assert_eq!(facets.len(), 11);
    assert_eq!(facets.iter().filter(|f| f["kind"] == "clique").count(), 5);
    assert_eq!(facets.iter().filter(|f| f["kind"] == "rank").count(), 1);
}

#[test]
fn lp_values() {
    let q = json(&["lp", "W:8:2"]);
    assert_eq!(q["result"]["value"], "8/3");
    let n = json(&["lp", "W:8:2", "--operator", "n", "--depth", "1"]);
    let (p, q) = n["result"]["value"].as_str().unwrap().split_once('/').unwrap();
    let (p, q): (i64, i64) = (p.parse().unwrap(), q.parse().unwrap());
    assert!(
        p > 2 * q && 3 * p < 8 * q,
        "N(qstab) optimum lies strictly between 2 and 8/3"
    );
    let p = json(&["lp", "W:8:2", "--operator", "disjunctive", "--f", "1"]);
    assert_eq!(p["value"], "5/2");
    let e = json(&["lp", "C:5", "--relaxation", "frac", "--objective", "1,-1,1/2,0,2"]);
    assert_eq!(e["result"]["value"], "5/2");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["rank", "graph", "W:5:2"]), 3);
    assert_eq!(code(&["rank", "graph", "X:1"]), 3);
    assert_eq!(code(&["verify", "nope"]), 3);
    assert_eq!(code(&["rank", "graph", "W:8:2", "n"]), 3);
    assert_eq!(code(&["lp", "W:8:2", "--objective", "1,2"]), 3);
    assert_eq!(code(&["rank", "ineq", "rank", "A:11:3", "--piece-cap", "1"]), 2);
    assert_eq!(code(&["lp", "W:8:2", "--operator", "n", "--depth", "3"]), 2);
    assert_eq!(code(&["recheck", "/nonexistent/file.json"]), 3);
    assert_eq!(code(&["--hull-bound", "0", "hull", "C:5"]), 3);
    assert_eq!(code(&["frobnicate"]), 3);
}

#[test]
fn incomplete_search_reports_partial_bounds() {
    let out = stabrank(&["rank", "ineq", "rank", "A:11:3", "--piece-cap", "1"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "incomplete");
    assert_eq!(v["lower"], 2);
}
