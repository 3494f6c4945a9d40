use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use decmin::fixtures;
use decmin::instance::Instance;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_decmin"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn data_files_match_the_fixtures() {
    for name in fixtures::NAMES {
        let text = std::fs::read_to_string(data(name)).unwrap();
        let expected = fixtures::instance(name).unwrap().to_json_string();
        assert_eq!(text, expected, "{name}");
    }
}

#[test]
fn groenevelt_on_the_skewed_pair() {
    let v = run_json(&[
        "decmin",
        path_str(&data("skewed-pair")),
        "--alg",
        "groenevelt",
    ]);
    assert_eq!(v["element"], serde_json::json!([3, 2]));
    let v = run_json(&[
        "decmin",
        path_str(&data("skewed-pair")),
        "--alg",
        "groenevelt",
        "--start",
        "2,3",
        "--trace",
    ]);
    assert_eq!(v["element"], serde_json::json!([3, 2]));
    assert_eq!(v["trace"]["root"]["y"], serde_json::json!([3, 3]));
    assert_eq!(v["trace"]["root"]["s_plus"], serde_json::json!([0]));
}

#[test]
fn every_algorithm_returns_a_least_square_sum() {
    for alg in ["groenevelt", "fujishige", "relax", "brute"] {
        let v = run_json(&["decmin", path_str(&data("shifted-rank-two")), "--alg", alg]);
        assert_eq!(v["square_sum"], 6, "{alg}");
    }
}

#[test]
fn canonical_partition_of_the_shifted_rank_two_table() {
    let v = run_json(&[
        "partition",
        path_str(&data("shifted-rank-two")),
        "--which",
        "canonical",
    ]);
    assert_eq!(v["values"], serde_json::json!([2, 1]));
    assert_eq!(v["blocks"], serde_json::json!([["s1", "s2"], ["s3", "s4"]]));
    let v = run_json(&[
        "partition",
        path_str(&data("shifted-rank-two")),
        "--which",
        "principal",
    ]);
    assert_eq!(v["values"], serde_json::json!(["3/2", "1/2"]));
}

#[test]
fn min_norm_point_of_the_line_segment() {
    let v = run_json(&["minnorm", path_str(&data("line-segment"))]);
    assert_eq!(v["min_norm_point"], serde_json::json!(["3/2", "3/2"]));
}

#[test]
fn min_cost_inline_and_from_file() {
    let v = run_json(&[
        "mincost",
        path_str(&data("shifted-rank-two")),
        "--cost",
        "0,1,0,1",
    ]);
    assert_eq!(v["element"], serde_json::json!([2, 1, 1, 0]));
    assert_eq!(v["total_cost"], "1/1");

    let dir = tempfile::tempdir().unwrap();
    let cost = dir.path().join("cost.json");
    std::fs::write(&cost, r#"["1/2", 0, 0, "-1"]"#).unwrap();
    let v = run_json(&[
        "mincost",
        path_str(&data("shifted-rank-two")),
        "--cost",
        path_str(&cost),
    ]);
    assert_eq!(v["element"], serde_json::json!([1, 2, 0, 1]));
    assert_eq!(v["total_cost"], "-1/2");

    let out = run(&["mincost", path_str(&data("shifted-rank-two"))]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn structure_lists_bases() {
    let v = run_json(&["structure", path_str(&data("shifted-rank-two"))]);
    assert_eq!(v["delta"], serde_json::json!([1, 1, 0, 0]));
    assert_eq!(v["bases"].as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        run(&[
            "decmin",
            path_str(&data("line-segment")),
            "--alg",
            "simplex"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        run(&["minnorm", "/nonexistent/instance.json"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["gen", "table", "--n", "9"]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    };
    let nonzero = write(
        "nonzero.json",
        r#"{"n": 1, "spec": {"kind": "table", "values": [1, 2]}}"#,
    );
    let out = run(&["minnorm", path_str(&nonzero)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p(empty set)"));

    let broken = write("broken.json", "{ not json");
    assert_eq!(run(&["minnorm", path_str(&broken)]).status.code(), Some(2));

    let submodular = write(
        "sub.json",
        r#"{"n": 2, "spec": {"kind": "table", "values": [0, 1, 1, 1]}}"#,
    );
    let out = run(&["partition", path_str(&submodular)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("supermodular"));

    // K7 with every edge repeated four times: the membership box is far above the cap
    let edges: Vec<[usize; 2]> = (0..7)
        .flat_map(|i| (i + 1..7).map(move |j| [i, j]))
        .flat_map(|e| std::iter::repeat_n(e, 4))
        .collect();
    let body = serde_json::json!({"n": 7, "spec": {"kind": "graph", "edges": edges}});
    let wide = write("wide.json", &body.to_string());
    let out = run(&["decmin", path_str(&wide), "--alg", "brute"]);
    assert_eq!(
        out.status.code(),
        Some(1),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds cap"));
}

#[test]
fn verify_passes_on_reference_files_and_generated_instances() {
    let out = run(&["verify", path_str(&data("shifted-rank-two"))]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS tightening-characterization"));
    assert!(!text.contains("FAIL"));

    let v = run_json(&["verify", "--seed", "5", "--count", "12", "--json"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["instances"], 12);
}

#[test]
fn gen_parse_gen_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["graph", "modular", "table"] {
        let path = dir.path().join(format!("{kind}.json"));
        let out = run(&[
            "gen",
            kind,
            "--n",
            "5",
            "--seed",
            "17",
            "--out",
            path_str(&path),
        ]);
        assert!(out.status.success());
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = Instance::from_json_str(&text).unwrap();
        parsed.validate().unwrap();
        assert_eq!(parsed.to_json_string(), text, "{kind}");
        let again = run(&["gen", kind, "--n", "5", "--seed", "17"]);
        assert_eq!(String::from_utf8(again.stdout).unwrap(), text, "{kind}");
    }
}

#[test]
fn subcommands_are_deterministic() {
    let file = data("crossed-pairs");
    let args = ["decmin", path_str(&file), "--alg", "fujishige", "--trace"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["verify", "--seed", "9", "--count", "6"]);
    let b = run(&["verify", "--seed", "9", "--count", "6"]);
    assert_eq!(a.stdout, b.stdout);
}
