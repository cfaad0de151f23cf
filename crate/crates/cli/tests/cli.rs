use std::process::{Command, Output};

use serde_json::Value;

fn wci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wci"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = wci(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const EIGHTY_FOUR: &str = r#"{"degrees":[84],"weights":[6,6,14,14,21,21]}"#;
const QUINTIC: &str = r#"{"degrees":[5],"weights":[1,1,1,1,1]}"#;

#[test]
fn classify_reports_kind_and_index() {
    let v = json_ok(&["classify", "--pair", EIGHTY_FOUR]);
    assert_eq!(v, serde_json::json!({"kind": "GeneralType", "index": "2"}));
}

#[test]
fn check_reports_smallest_regularity_witness() {
    let v = json_ok(&["check", "--pair", EIGHTY_FOUR]);
    assert_eq!(v["regular"], false);
    assert_eq!(v["regular_witness"]["divisor"], "2");
    assert_eq!(v["cartier"], true);
}

#[test]
fn quintic_middle_hodge() {
    let v = json_ok(&["hodge", "--middle", "--pair", QUINTIC]);
    assert_eq!(v["h_pr"], serde_json::json!(["1", "101", "101", "1"]));
    assert_eq!(v["branch"], "CalabiYau");
}

#[test]
fn hodge_defaults_to_h0n() {
    let v = json_ok(&["hodge", "--pair", QUINTIC]);
    assert_eq!(v["h0n"], "1");
    let v = json_ok(&["hodge", "--verdict", "--pair", EIGHTY_FOUR]);
    assert_eq!(v["verdict"]["h0n"], "0");
    assert_eq!(v["verdict"]["agrees_with_branch"], true);
}

#[test]
fn represent_is_verified() {
    for method in ["oracle", "cartier", "codim2"] {
        let v = json_ok(&[
            "represent",
            "--method",
            method,
            "--pair",
            r#"{"degrees":[6,6],"weights":[1,1,2,3,3]}"#,
        ]);
        assert_eq!(v["found"], true, "{method}");
        assert_eq!(v["verified"], true, "{method}");
        let beta: Vec<u64> = v["beta"]
            .as_array()
            .unwrap()
            .iter()
            .map(|b| b.as_str().unwrap().parse().unwrap())
            .collect();
        assert_eq!(beta.iter().zip([1, 1, 2, 3, 3]).map(|(b, a)| b * a).sum::<u64>(), 12);
    }
    let v = json_ok(&["represent", "--pair", r#"{"degrees":[6],"weights":[2,3]}"#]);
    assert_eq!(v["found"], false);
    assert!(v.get("verified").is_none());
}

#[test]
fn counterexample_checks_hold() {
    let v = json_ok(&["counterexample", "--dim", "4"]);
    assert_eq!(v["pair"]["degrees"], serde_json::json!(["84"]));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
}

#[test]
fn point_family_checks_hold() {
    let v = json_ok(&["point-family", "--n", "3"]);
    assert_eq!(v["N"], 3);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
}

#[test]
fn primes_subcommands() {
    assert_eq!(json_ok(&["primes", "pi", "--x", "100"])["pi"], "25");
    let v = json_ok(&["primes", "delta", "--n", "3"]);
    assert_eq!(v["value"], "1/42");
    assert_eq!(v["primes"], serde_json::json!(["2", "3", "7"]));
    let v = json_ok(&["primes", "straddle", "--m", "3"]);
    assert_eq!(v["partial_sum"], "1805/1806");
    assert_eq!(v["verified"], true);
    assert_eq!(
        json_ok(&["primes", "rs-check", "--x", "17", "--to", "2000"])["holds"],
        true
    );
    assert_eq!(json_ok(&["primes", "interval-lemma", "--n", "7"])["holds"], true);
    assert_eq!(json_ok(&["primes", "delta-bound", "--n", "5"])["verified"], true);
}

#[test]
fn domain_errors_exit_one_with_error_object() {
    let out = wci(&[
        "represent",
        "--method",
        "cartier",
        "--pair",
        r#"{"degrees":[6],"weights":[2,3]}"#,
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "represent");
    let out = wci(&["classify", "--pair", r#"{"degrees":[0],"weights":[1]}"#]);
    assert_eq!(out.status.code(), Some(1));
    let out = wci(&["primes", "rs-check", "--x", "10"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(wci(&["bogus"]).status.code(), Some(2));
    assert_eq!(wci(&["classify"]).status.code(), Some(2));
    assert_eq!(wci(&["classify", "--pair", "{not json"]).status.code(), Some(2));
    assert_eq!(wci(&["counterexample", "--dim", "2"]).status.code(), Some(2));
}

#[test]
fn scan_writes_jsonl_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let args = |path: &str| {
        vec![
            "scan".to_string(),
            "--max-k".into(),
            "2".into(),
            "--max-n".into(),
            "4".into(),
            "--max-degree-sum".into(),
            "16".into(),
            "--max-weight".into(),
            "8".into(),
            "--out".into(),
            path.into(),
        ]
    };
    let (a, b) = (dir.path().join("a.jsonl"), dir.path().join("b.jsonl"));
    let a_args = args(a.to_str().unwrap());
    let summary = json_ok(&a_args.iter().map(String::as_str).collect::<Vec<_>>());
    let mut b_args = args(b.to_str().unwrap());
    b_args.extend(["--jobs".into(), "1".into()]);
    json_ok(&b_args.iter().map(String::as_str).collect::<Vec<_>>());
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let lines = String::from_utf8(ta).unwrap();
    assert_eq!(lines.lines().count() as u64, summary["pairs"].as_u64().unwrap());
    assert_eq!(summary["violations"], serde_json::json!({}));
    for line in lines.lines() {
        let record: Value = serde_json::from_str(line).unwrap();
        assert_eq!(record["regular"], true);
    }
}

#[test]
fn scan_csv_and_stdout() {
    let out = wci(&[
        "scan",
        "--max-k",
        "1",
        "--max-n",
        "2",
        "--max-degree-sum",
        "6",
        "--max-weight",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("pair,kind,index,"));
    let out = wci(&[
        "scan",
        "--max-k",
        "1",
        "--max-n",
        "2",
        "--max-degree-sum",
        "6",
        "--max-weight",
        "3",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let last: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["pairs"].as_u64().unwrap() as usize, text.lines().count() - 1);
}

#[test]
fn scan_rejects_unwritable_output_before_running() {
    let out = wci(&["scan", "--out", "/nonexistent-dir/records.jsonl"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "io");
}
