//! End-to-end tests of the command-line interface: exit codes, JSON
//! stability, and the documented reference outputs.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cactus-cells"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cactus-cells"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("valid JSON output")
}

#[test]
fn compress_reference_tree() {
    let out = run(&[
        "trees",
        "compress",
        "--tree",
        "(( {1} {2} {3} )(({4} {5})({6} {7} {8} {9})))",
        "--a",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "({1,2,3} ({4,5} ({6} {7} {8} {9})))");

    let out = run(&[
        "trees",
        "compress",
        "--tree",
        "({1,2,3} ({4,5} ({6} {7} {8} {9})))",
        "--a",
        "3",
        "--b",
        "7",
    ]);
    assert_eq!(stdout(&out).trim(), "({1,2,3} {4,5,6,7,8,9})");
}

#[test]
fn malformed_tree_exits_2() {
    let out = run(&["trees", "validate", "--tree", "{1,2,3,4}|{5}", "--n", "5", "--a", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failed_stability_check_exits_1() {
    let out = run(&[
        "trees", "validate", "--tree", "(({1} {2}) {3} {4})", "--n", "4", "--a", "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn enumerate_counts() {
    let out = run(&["trees", "enumerate", "--n", "4", "--a", "3", "--json"]);
    let report = json(&out);
    assert_eq!(report["results"]["count"], 37);
    assert_eq!(report["results"]["f_vector"], serde_json::json!([12, 18, 7]));
}

#[test]
fn stats_euler() {
    let out = run(&["cells", "stats", "--n", "4", "--a", "1", "--json"]);
    let report = json(&out);
    assert_eq!(report["results"]["euler"], -3);
}

#[test]
fn json_output_is_stable() {
    let a = stdout(&run(&["cells", "stats", "--n", "5", "--a", "3", "--json"]));
    let b = stdout(&run(&["cells", "stats", "--n", "5", "--a", "3", "--json"]));
    assert_eq!(a, b);
}

#[test]
fn curve_tree_with_theta() {
    let curve = r#"{"points": [
        {"pos": "0", "labels": [1]}, {"pos": "1", "labels": [2]}, {"pos": "2", "labels": [3]},
        {"pos": "4", "labels": [4]}, {"pos": "5", "labels": [5]}, {"pos": "13/2", "labels": [6]}
    ]}"#;
    let out = run(&["curve", "tree", "--curve", curve, "--which", "big", "--theta", "--json"]);
    let report = json(&out);
    assert_eq!(
        report["results"]["tree"],
        "(({1} {2} {3}) (({4} {5}) {6}))"
    );
    assert_eq!(report["results"]["theta"]["{1,2,3}"], "1/2");
    assert_eq!(report["results"]["theta"]["{4,5,6}"], "3/4");
    assert_eq!(report["results"]["theta"]["{4,5}"], "2/3");
}

#[test]
fn curve_example_n7() {
    let curve = r#"{"points": [
        {"pos": "0", "labels": [1]}, {"pos": "1", "labels": [2]}, {"pos": "2", "labels": [3]},
        {"pos": "10", "labels": [4]}, {"pos": "12", "labels": [5]},
        {"pos": "16", "labels": [6]}, {"pos": "18", "labels": [7]}
    ]}"#;
    let out = run(&[
        "curve", "tree", "--curve", curve, "--which", "big-a", "--a", "3", "--json",
    ]);
    let report = json(&out);
    assert_eq!(report["results"]["tree"], "(({4,5} {6,7}) {1,2,3})");
}

#[test]
fn perm_phi_centroid_and_theta_roundtrip() {
    let out = run(&[
        "perm", "phi", "--n", "9", "--point", "3/2,4,3/2,6,4,4,15/2,15/2", "--json",
    ]);
    let report = json(&out);
    let curve = report["results"].to_string();
    let back = run(&["perm", "theta", "--curve", &curve, "--json"]);
    let report = json(&back);
    let coords: Vec<String> = report["results"]["point"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(coords, vec!["3/2", "4", "3/2", "6", "4", "4", "15/2", "15/2"]);
}

#[test]
fn perm_faces_counts() {
    let out = run(&["perm", "faces", "--m", "3", "--json"]);
    let report = json(&out);
    assert_eq!(
        report["results"]["face_counts_by_dim"],
        serde_json::json!({"0": 6, "1": 6, "2": 1})
    );
}

#[test]
fn group_order_and_formats() {
    let out = run(&["group", "order", "--n", "4", "--a", "3", "--json"]);
    let report = json(&out);
    assert_eq!(report["results"]["order"], 48);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["group", "present", "--n", "4", "--a", "3", "--format", "gap"]);
    let text = stdout(&out);
    assert!(text.contains("FreeGroup(\"s_1_2\", \"s_1_4\", \"s_2_3\", \"s_3_4\")"));

    let out = run(&["group", "present", "--n", "4", "--a", "3", "--format", "json"]);
    assert!(stdout(&out).contains("\"generators\":[[1,2],[1,4],[2,3],[3,4]]"));
}

#[test]
fn inconclusive_order_exits_zero() {
    let out = run(&[
        "group", "order", "--n", "4", "--a", "1", "--max-cosets", "5000", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["results"]["order"], serde_json::Value::Null);
    assert_eq!(report["checks"][0]["status"], "inconclusive");
}

#[test]
fn max_cosets_env_override() {
    let out = run_env(
        &["group", "order", "--n", "4", "--a", "1", "--json"],
        "CACTUS_CELLS_MAX_COSETS",
        "3000",
    );
    let report = json(&out);
    assert!(stdout(&out).contains("3000"));
    assert_eq!(report["results"]["order"], serde_json::Value::Null);
}

#[test]
fn group_index_sigma() {
    let out = run(&[
        "group", "index", "--n", "4", "--a", "3", "--subgroup", "sigma", "--json",
    ]);
    let report = json(&out);
    assert_eq!(report["results"]["index"], 2);
}

#[test]
fn group_verify_small() {
    let out = run(&["group", "verify", "--n", "4", "--a", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn skeleton_classification() {
    let out = run(&["cells", "skeleton", "--n", "5", "--a", "3", "--json"]);
    let report = json(&out);
    let one_cells = report["results"]["one_cells"].as_array().unwrap();
    let type2: Vec<_> = one_cells
        .iter()
        .filter(|c| c["kind"]["type"] == 2)
        .collect();
    assert_eq!(type2.len(), 2);
}

#[test]
fn large_n_requires_force() {
    let out = run(&["trees", "enumerate", "--n", "10", "--a", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn injected_fault_fails_exactly_one_check() {
    let out = run(&[
        "verify-all", "--n-max", "3", "--max-cosets", "50000", "--inject-fault", "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    let failed: Vec<_> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .collect();
    assert_eq!(failed.len(), 1, "{}", stdout(&out));
    assert_eq!(failed[0]["name"], "relator-soundness");
}
