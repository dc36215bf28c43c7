use std::path::Path;
use std::process::{Command, Output};

use frci::graph::dag_from_dot;

fn frci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frci"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

const CHAIN: &str = r#"{"nodes":[
  {"name":"A","states":["0","1"],"cpt":[[0.6,0.4]]},
  {"name":"B","states":["0","1"],"parents":["A"],"cpt":[[0.8,0.2],[0.3,0.7]]},
  {"name":"C","states":["0","1"],"parents":["B"],"cpt":[[0.75,0.25],[0.2,0.8]]}
]}"#;

#[test]
fn chain_dataset_recovers_two_edges() {
    let dir = tempfile::tempdir().unwrap();
    let (net, data, dot) = (p(dir.path(), "n.json"), p(dir.path(), "d.csv"), p(dir.path(), "o.dot"));
    std::fs::write(&net, CHAIN).unwrap();
    assert!(frci(&["sample", "--net", &net, "--rows", "20000", "--seed", "3", "--out", &data]).status.success());
    let out = frci(&["run", "--k", "1", "--data", &data, "--alpha", "0.01", "--out-dot", &dot]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let learned = dag_from_dot(&std::fs::read_to_string(&dot).unwrap()).unwrap();
    assert_eq!(learned.node_count(), 3);
    assert_eq!(learned.edge_count(), 2);
    let (a, c) = (learned.require("A").unwrap(), learned.require("C").unwrap());
    assert!(!learned.adjacent(a, c));
}

#[test]
fn perfect_oracle_stats_report_skeleton() {
    let dir = tempfile::tempdir().unwrap();
    let (net, stats) = (p(dir.path(), "n.json"), p(dir.path(), "s.json"));
    assert!(frci(&["gen", "--nodes", "6", "--latents", "1", "--seed", "5", "--out", &net]).status.success());
    let dot = p(dir.path(), "o.dot");
    let out = frci(&["run", "--k", "2", "--net", &net, "--oracle", "perfect", "--stats", &stats, "--out-dot", &dot]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&stats).unwrap()).unwrap();
    assert_eq!(v["k"], 2);
    assert_eq!(v["variables"], 6);
    assert!(v["queries"]["total"].as_u64().unwrap() > 0);
    assert!(v.get("wall_time_ms").is_none());
}

#[test]
fn repeated_runs_match() {
    let dir = tempfile::tempdir().unwrap();
    let net = p(dir.path(), "n.json");
    assert!(frci(&["gen", "--nodes", "6", "--latents", "2", "--seed", "9", "--out", &net]).status.success());
    let traces: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let t = p(dir.path(), &format!("t{i}"));
            let dot = p(dir.path(), &format!("o{i}.dot"));
            let args = ["run", "--k", "1", "--net", &net, "--oracle", "perfect", "--trace", &t, "--out-dot", &dot];
            assert!(frci(&args).status.success());
            std::fs::read(t).unwrap()
        })
        .collect();
    assert!(!traces[0].is_empty());
    assert_eq!(traces[0], traces[1]);
}

#[test]
fn compare_identical_structures() {
    let dir = tempfile::tempdir().unwrap();
    let net = p(dir.path(), "n.json");
    assert!(frci(&["gen", "--nodes", "5", "--seed", "2", "--out", &net]).status.success());
    let out = frci(&["compare", "--a", &net, "--b", &net, "--k", "2", "--unrestricted"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["up_to_k"], serde_json::json!([]));
    assert_eq!(v["unrestricted"], serde_json::json!([]));
}

#[test]
fn bench_alarm_prints_counts() {
    let out = frci(&["bench-alarm", "--k", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("superfluous: 1"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(frci(&["run", "--k", "1"]).status.code(), Some(1));
    assert_eq!(frci(&["--help"]).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let dot = p(dir.path(), "o.dot");
    let missing = ["run", "--k", "1", "--data", "/nonexistent/x.csv", "--alpha", "0.01", "--out-dot", &dot];
    assert_eq!(frci(&missing).status.code(), Some(2));
    let bad = p(dir.path(), "bad.json");
    std::fs::write(&bad, "{\"nodes\": [{\"name\": \"A\"}]}").unwrap();
    let malformed = ["run", "--k", "1", "--net", &bad, "--oracle", "perfect", "--out-dot", &dot];
    assert_eq!(frci(&malformed).status.code(), Some(2));
}
