//! End-to-end behavior of the `packset` binary: exit codes, stdin
//! handling, output files, and the documented flag surface.

use std::io::Write;
use std::process::{Command, Stdio};

fn packset_cmd() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_packset"));
    cmd.env_remove("PACKSET_BUDGET");
    cmd
}

fn run(args: &[&str], stdin: Option<&str>) -> (String, String, i32) {
    let mut cmd = packset_cmd();
    cmd.args(args);
    cmd.stdout(Stdio::piped()).stderr(Stdio::piped());
    if stdin.is_some() {
        cmd.stdin(Stdio::piped());
    }
    let mut child = cmd.spawn().expect("binary runs");
    if let Some(data) = stdin {
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(data.as_bytes())
            .unwrap();
    }
    let out = child.wait_with_output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

const CANONICAL: &str =
    r#"{"dim":2,"pieces":[{"A":[["2","1"],["1","2"]],"b":["2","2"]}]}"#;

#[test]
fn hull_of_the_canonical_instance() {
    let (stdout, _, code) = run(&["hull", "-"], Some(CANONICAL));
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["result"]["hull"]["A"], serde_json::json!([["1", "1"]]));
    assert_eq!(doc["result"]["hull"]["b"], serde_json::json!(["1"]));
    assert!(doc["input_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn closure_exact_and_verified() {
    let (stdout, _, code) = run(
        &["closure", "-", "--k", "1", "--verify", "25", "--seed", "9"],
        Some(CANONICAL),
    );
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let closure = &doc["result"]["closure"];
    assert_eq!(closure["exact"], serde_json::json!(true));
    assert_eq!(closure["certificate"], serde_json::json!("all-positive-A"));
    assert_eq!(doc["result"]["verification"]["passed"], serde_json::json!(true));
}

#[test]
fn closure_with_box_on_zero_entries_is_truncated() {
    let instance = r#"{"dim":2,"pieces":[{"A":[["1","0"],["0","1"]],"b":["1","1"]}]}"#;
    let (stdout, _, code) = run(&["closure", "-", "--k", "1", "--box", "4,4"], Some(instance));
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let closure = &doc["result"]["closure"];
    assert_eq!(closure["exact"], serde_json::json!(false));
    assert_eq!(closure["certificate"], serde_json::json!("truncated-box"));
    assert_eq!(closure["truncation_box"], serde_json::json!([4, 4]));
}

#[test]
fn parse_errors_exit_2_with_position() {
    let (_, stderr, code) = run(&["hull", "-"], Some(r#"{"dim":2,"pieces":[{"A":[["1/0"]],"b":["1"]}]}"#));
    assert_eq!(code, 2);
    assert!(stderr.contains("line 1"), "stderr was: {stderr}");
}

#[test]
fn non_downsets_exit_3_with_replayable_witness() {
    let bad = r#"{"dim":2,"pieces":[{"A":[["1","-1"]],"b":["1"]}]}"#;
    let (stdout, _, code) = run(&["hull", "-"], Some(bad));
    assert_eq!(code, 3);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["error"], serde_json::json!("not-a-downset"));
    // Witness replay: inside satisfies x1 - x2 <= 1, below does not.
    let get = |v: &serde_json::Value| -> Vec<f64> {
        v.as_array()
            .unwrap()
            .iter()
            .map(|s| {
                let s = s.as_str().unwrap();
                match s.split_once('/') {
                    Some((p, q)) => p.parse::<f64>().unwrap() / q.parse::<f64>().unwrap(),
                    None => s.parse().unwrap(),
                }
            })
            .collect()
    };
    let inside = get(&doc["witness"]["inside"]);
    let below = get(&doc["witness"]["below"]);
    assert!(inside[0] - inside[1] <= 1.0);
    assert!(below[0] - below[1] > 1.0);
    assert!(below.iter().zip(&inside).all(|(y, x)| y <= x));
}

#[test]
fn budget_overrun_exits_4() {
    let mut cmd = packset_cmd();
    cmd.args(["packset", "from-knapsack", r#"{"c":["1","1"],"d":"100000"}"#]);
    cmd.env("PACKSET_BUDGET", "100");
    let out = cmd.output().unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn failed_verification_exits_5() {
    // Corrupt result: hull strictly smaller than the integer hull.
    let result = r#"{
        "hull": {"dim": 2, "A": [["2","2"]], "b": ["1"]},
        "exact": true,
        "certificate": "all-positive-A",
        "family": [],
        "truncation_box": null
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let rpath = dir.path().join("result.json");
    let ipath = dir.path().join("inst.json");
    std::fs::write(&rpath, result).unwrap();
    std::fs::write(&ipath, CANONICAL).unwrap();
    let (stdout, _, code) = run(
        &[
            "verify",
            rpath.to_str().unwrap(),
            ipath.to_str().unwrap(),
            "--samples",
            "10",
        ],
        None,
    );
    assert_eq!(code, 5);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["result"]["verification"]["passed"], serde_json::json!(false));
}

#[test]
fn packset_subcommands_round_trip() {
    let tri = r#"{"dim":2,"generators":[[2,0],[1,1],[0,2]]}"#;
    let strip = r#"{"dim":2,"generators":[["inf",1]]}"#;

    let (stdout, _, code) = run(&["packset", "subset", tri, strip], None);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["result"]["subset"], serde_json::json!(false));

    let (stdout, _, _) = run(&["packset", "intersect", tri, strip], None);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(
        doc["result"]["set"]["generators"],
        serde_json::json!([[1, 1], [2, 0]])
    );

    let (stdout, _, _) = run(&["packset", "slice", tri, "1"], None);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["result"]["set"]["dim"], serde_json::json!(1));
    assert_eq!(doc["result"]["set"]["generators"], serde_json::json!([[1]]));

    // Emitted sets re-parse to equal values.
    let (stdout, _, _) = run(&["packset", "union", tri, strip], None);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let set_json = doc["result"]["set"].to_string();
    let (stdout2, _, code2) = run(&["packset", "union", &set_json, strip], None);
    assert_eq!(code2, 0);
    let doc2: serde_json::Value = serde_json::from_str(&stdout2).unwrap();
    assert_eq!(doc2["result"]["set"], doc["result"]["set"]);
}

#[test]
fn blocks_command_renders_descriptors() {
    let (stdout, _, code) = run(
        &["blocks", r#"{"dim":2,"generators":[["inf",1],[3,2]]}"#],
        None,
    );
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let rendered = doc["result"]["rendered"].as_array().unwrap();
    assert!(rendered.contains(&serde_json::json!("N × [0..1]")));
    assert!(rendered.contains(&serde_json::json!("[0..3] × [0..2]")));
}

#[test]
fn wqo_basis_on_a_strictly_decreasing_chain() {
    // S_0 ⊋ S_1 ⊋ ... ⊋ S_9: the basis is the last element.
    let sets: Vec<String> = (0..10)
        .map(|i| format!(r#"{{"dim":1,"generators":[[{}]]}}"#, 9 - i))
        .collect();
    let stream = format!("[{}]", sets.join(","));
    let (stdout, _, code) = run(&["wqo-basis", "-"], Some(&stream));
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["result"]["basis"].as_array().unwrap().len(), 1);
    assert_eq!(
        doc["result"]["basis"][0]["generators"],
        serde_json::json!([[0]])
    );
    assert_eq!(doc["result"]["last_change_index"], serde_json::json!(9));
    // A single set: the basis is that set.
    let (stdout, _, _) = run(
        &["wqo-basis", r#"[{"dim":1,"generators":[[5]]}]"#],
        None,
    );
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["result"]["basis"][0]["generators"], serde_json::json!([[5]]));
}

#[test]
fn wqo_basis_rejects_mixed_dimensions() {
    let stream = r#"[{"dim":1,"generators":[[1]]},{"dim":2,"generators":[[1,1]]}]"#;
    let (_, stderr, code) = run(&["wqo-basis", "-"], Some(stream));
    assert_eq!(code, 2);
    assert!(stderr.contains("dimension"), "stderr: {stderr}");
}

#[test]
fn out_flag_writes_the_document_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (stdout, _, code) = run(
        &["hull", "-", "--out", path.to_str().unwrap()],
        Some(CANONICAL),
    );
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let contents = std::fs::read_to_string(&path).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&contents).unwrap();
    assert_eq!(doc["result"]["hull"]["b"], serde_json::json!(["1"]));
}

#[test]
fn multi_piece_closure_dispatches_to_the_downset_engine() {
    let union = r#"{"dim":2,"pieces":[
        {"A":[["1","0"],["0","1"]],"b":["1","2"]},
        {"A":[["1","0"],["0","1"]],"b":["2","1"]}
    ]}"#;
    let (stdout, _, code) = run(&["closure", "-", "--k", "1"], Some(union));
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(
        doc["result"]["closure"]["certificate"],
        serde_json::json!("truncated-box")
    );

    let (stdout, _, code) = run(&["closure-inf", "-"], Some(union));
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(
        doc["result"]["closure"]["certificate"],
        serde_json::json!("conv-union-integer-hull")
    );
    assert_eq!(doc["result"]["closure"]["exact"], serde_json::json!(true));
}

#[test]
fn unknown_flags_are_rejected() {
    let (_, _, code) = run(&["hull", "-", "--frobnicate"], Some(CANONICAL));
    assert_eq!(code, 2);
}

#[test]
fn higher_order_closure_is_contained_in_the_stored_lower_order() {
    use packset::poly::{h_to_v, poly_contains};
    use packset::{Limits, PackingPolyhedron};

    let instance = r#"{"dim":2,"pieces":[{"A":[["3","1"],["1","4"],["2","2"]],"b":["2","2","2"]}]}"#;
    let extract = |stdout: &str| -> PackingPolyhedron {
        let doc: serde_json::Value = serde_json::from_str(stdout).unwrap();
        serde_json::from_value(doc["result"]["closure"]["hull"].clone()).unwrap()
    };
    let (one, code1) = {
        let (s, _, c) = run(&["closure", "-", "--k", "1", "--verify", "50"], Some(instance));
        (s, c)
    };
    let (two, code2) = {
        let (s, _, c) = run(&["closure", "-", "--k", "2", "--verify", "50"], Some(instance));
        (s, c)
    };
    assert_eq!(code1, 0);
    assert_eq!(code2, 0);
    let a1 = extract(&one);
    let a2 = extract(&two);
    let limits = Limits::default();
    let a2_v = h_to_v(&a2.to_hpolyhedron(), &limits).unwrap();
    assert!(poly_contains(&a1.to_hpolyhedron(), &a2_v).unwrap());
}
