use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eo-strata")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn pairs(doc: &Value, verdict: &str) -> Vec<(u64, u64)> {
    doc["strata"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["verdict"] == verdict)
        .map(|r| (r["u"].as_u64().unwrap(), r["v"].as_u64().unwrap()))
        .collect()
}

#[test]
fn strata_rows_and_counts() {
    let doc = json(&["strata", "--q", "6"]);
    let rows = doc["strata"].as_array().unwrap();
    assert_eq!(rows.len(), 15);
    assert_eq!(rows.iter().map(|r| r["dim"].as_u64().unwrap()).max(), Some(8));

    let doc = json(&["strata", "--q", "2"]);
    assert_eq!(doc["strata"], serde_json::json!([{"u": 1, "v": 2, "dim": 0}]));

    let doc = json(&["strata", "--q", "11"]);
    let total: u64 = doc["counts"].as_array().unwrap().iter().map(|c| c["n"].as_u64().unwrap()).sum();
    assert_eq!(total, 55);

    let csv = run(&["strata", "--q", "6", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), 16);
}

#[test]
fn q_range_gives_array() {
    let doc = json(&["strata", "--q", "3..5"]);
    assert_eq!(doc.as_array().map(Vec::len), Some(3));
}

#[test]
fn product_example() {
    let doc = json(&["product", "--kind", "1x1", "--m", "2", "--a", "1", "--n", "2", "--b", "1"]);
    assert_eq!(doc["formula"], serde_json::json!({"q": 6, "u": 3, "v": 4}));
    assert_eq!(doc["agree"], true);

    let doc = json(&["product", "--kind", "2x0", "--m", "3", "--u", "2", "--v", "5", "--n", "2"]);
    assert_eq!(doc["formula"]["v"], 7);
    assert_eq!(doc["agree"], true);

    let out = run(&["product", "--kind", "1x1", "--m", "2", "--a", "3", "--n", "2", "--b", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn forgetful_q5() {
    let doc = json(&["forgetful", "--q", "5"]);
    let rows = doc["strata"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r["agree"] == true && r["invariants"] == true));
}

#[test]
fn ss_report_q5() {
    let doc = json(&["ss-report", "--q", "5"]);
    assert_eq!(pairs(&doc, "Contained"), vec![(1, 2), (1, 3)]);
    let disjoint = pairs(&doc, "Disjoint");
    for s in [(2, 5), (3, 5), (4, 5)] {
        assert!(disjoint.contains(&s));
    }
    assert!(pairs(&doc, "Intersects").contains(&(2, 3)));

    let csv = String::from_utf8(run(&["ss-report", "--q", "5", "--format", "csv"]).stdout).unwrap();
    assert!(csv.starts_with("q,u,v,dim,verdict,provenance"));
    assert_eq!(csv.lines().count(), 11);
}

#[test]
fn closure_dot_is_deterministic() {
    let a = run(&["closure", "--q", "7", "--format", "dot"]);
    let b = run(&["closure", "--q", "7", "--format", "dot", "--strategy", "exhaustive"]);
    let c = run(&["closure", "--q", "7", "--format", "dot"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(a.stdout, b.stdout);
    let dot = String::from_utf8(a.stdout).unwrap();
    assert!(dot.starts_with("digraph closure_q7 {"));
    assert!(dot.contains("\"1_2\" [label=\"(1,2)\", rank=0];"));
    assert_eq!(dot.matches("rank=").count(), 21);
    assert_eq!(dot.matches("style=dashed").count(), 4);
}

#[test]
fn closure_dot_q11() {
    let out = run(&["closure", "--q", "11", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("rank=").count(), 55);
    assert_eq!(dot.matches("style=dashed, color=orange").count(), 16);
}

#[test]
fn closure_checkpoint_resume() {
    let dir = std::env::temp_dir().join(format!("eo-strata-ckpt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let ckpt = dir.join("q8.jsonl");
    let ckpt = ckpt.to_str().unwrap();
    let first = run(&["closure", "--q", "8", "--checkpoint", ckpt]);
    let lines = std::fs::read_to_string(ckpt).unwrap().lines().count();
    assert_eq!(lines, 28);
    let second = run(&["closure", "--q", "8", "--checkpoint", ckpt]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_to_string(ckpt).unwrap().lines().count(), 28);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn conjecture_and_scan_exit_codes() {
    let out = run(&["conjecture", "--q", "5..8"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc.as_array().unwrap().iter().all(|r| r["holds"] == true));

    let out = run(&["scan", "--max-q", "12", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bad_arguments() {
    assert_eq!(run(&["strata", "--q", "1"]).status.code(), Some(2));
    assert_eq!(run(&["strata", "--q", "6", "--threads", "0"]).status.code(), Some(2));
    assert_eq!(run(&["forgetful", "--q", "5", "--format", "dot"]).status.code(), Some(2));
}
