use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.t"))
}

fn kernseq(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kernseq"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, out) = kernseq(&all);
    (code, serde_json::from_str(&out).expect("json report"))
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

#[test]
fn decide_ll_rejects_non_prefix_closed() {
    let (code, report) = json(&["decide", "ll", path(&fixture("even_a"))]);
    assert_eq!(code, 1);
    assert_eq!(report["outcome"], "NO");
    assert_eq!(report["reason"], "NOT_PREFIX_CLOSED");
    assert_eq!(report["exitCode"], 1);
    assert_eq!(report["schema"], 1);
}

#[test]
fn decide_lp_reports_infinite_index_under_small_cap() {
    let (code, report) = json(&["decide", "lp", path(&fixture("index_infinite")), "--closure-cap", "8"]);
    assert_eq!(code, 1);
    assert_eq!(report["reason"], "INFINITE_INDEX");
}

#[test]
fn decided_witness_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.t");
    let id = fixture("identity");
    let (code, report) = json(&["decide", "ll", path(&id), "-o", path(&w)]);
    assert_eq!(code, 0);
    assert_eq!(report["witness"]["states"], 1);
    assert_eq!(report["witness"]["kernelCheck"]["kind"], "exact");
    let (code, report) = json(&["verify", path(&id), path(&w)]);
    assert_eq!(code, 0);
    assert_eq!(report["kernelEqual"], true);
}

#[test]
fn subsequential_and_sequential_witnesses_verify() {
    let dir = tempfile::tempdir().unwrap();
    let r = fixture("even_a");
    let sub = dir.path().join("sub.t");
    let seq = dir.path().join("seq.t");
    assert_eq!(kernseq(&["decide", "lp", path(&r), "-o", path(&sub)]).0, 0);
    assert_eq!(
        kernseq(&["decide", "lp", path(&r), "-o", path(&seq), "--eliminate-final-output"]).0,
        0
    );
    let (code, report) = json(&["verify", path(&r), path(&sub)]);
    assert_eq!((code, &report["kernelCheck"]["kind"]), (0, &Value::from("exact")));
    let (code, report) = json(&["verify", path(&r), path(&seq), "--max-len", "6"]);
    assert_eq!(code, 0);
    assert_eq!(report["kernelCheck"]["kind"], "bounded");
    assert_eq!(report["kernelCheck"]["maxLen"], 6);
}

#[test]
fn verify_reports_a_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.t");
    assert_eq!(
        kernseq(&["decide", "ll", path(&fixture("identity")), "-o", path(&w)]).0,
        0
    );
    let (code, report) = json(&["verify", path(&fixture("change_pattern")), path(&w)]);
    assert_eq!(code, 1);
    assert_eq!(report["kernelEqual"], false);
    let pair = report["counterexample"].as_array().unwrap();
    assert_eq!(pair.len(), 2);
}

#[test]
fn closure_cap_exhaustion_is_unknown() {
    let (code, report) = json(&["decide", "lp", path(&fixture("chain8")), "--closure-cap", "4"]);
    assert_eq!(code, 2);
    assert_eq!(report["outcome"], "UNKNOWN");
    assert_eq!(report["reason"], "CLOSURE_CAP_EXHAUSTED");
}

#[test]
fn closure_command_writes_a_usable_closure() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("pplus.t");
    let r = fixture("chain3");
    let (code, report) = json(&["closure", path(&r), "--cap", "8", "-o", path(&c)]);
    assert_eq!(code, 0);
    assert_eq!(report["converged"], true);
    assert_eq!(report["exponent"], 3);
    let (code, report) = json(&["decide", "lp", path(&r), "--pplus", path(&c)]);
    assert_eq!(code, 0);
    assert_eq!(report["outcome"], "YES");
    let (code, _) = json(&["closure", path(&r), "--cap", "2", "-o", path(&c)]);
    assert_eq!(code, 2);
}

#[test]
fn bad_closure_witness_is_an_input_error() {
    let r = fixture("chain3");
    let (code, report) = json(&["decide", "lp", path(&r), "--pplus", path(&r)]);
    assert_eq!(code, 3);
    assert!(report["error"].is_string());
}

#[test]
fn validate_and_analyze() {
    let (code, report) = json(&["validate", path(&fixture("change_pattern"))]);
    assert_eq!(code, 0);
    assert_eq!(report["equivalence"], true);
    let (code, report) = json(&["validate", path(&fixture("last_a_canonical"))]);
    assert_eq!(code, 1);
    assert_eq!(report["equivalence"], false);
    let (code, report) = json(&["analyze", path(&fixture("even_a"))]);
    assert_eq!(code, 0);
    assert_eq!(report["report"]["prefixClosed"], false);
}

#[test]
fn input_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.t");
    std::fs::write(
        &bad,
        "kind letter-transducer\ninputs a\noutputs a\nstates q\ninitials q\nfinals q\nq a / a -> r\n",
    )
    .unwrap();
    let (code, report) = json(&["decide", "ll", path(&bad)]);
    assert_eq!(code, 3);
    assert!(report["error"].as_str().unwrap().contains("bad.t"));
    assert_eq!(kernseq(&["decide", "ll", "/nonexistent/relation.t"]).0, 3);
    assert_eq!(kernseq(&["decide", "ll", path(&bad), "--closure-cap", "3"]).0, 3);
    assert_eq!(kernseq(&["frobnicate"]).0, 3);
}

#[test]
fn text_and_json_carry_the_same_fields() {
    let args = ["decide", "lp", "--eliminate-final-output"];
    let f = fixture("even_a");
    let mut with_file: Vec<&str> = args.to_vec();
    with_file.push(path(&f));
    let (c1, text) = kernseq(&with_file);
    let (c2, report) = json(&with_file);
    assert_eq!(c1, c2);
    let mut leaves = Vec::new();
    flatten("", &report, &mut leaves);
    let text_lines: Vec<&str> = text.lines().collect();
    let json_lines: Vec<String> = leaves.into_iter().filter(|l| !l.starts_with("schema:")).collect();
    assert_eq!(text_lines, json_lines);
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        Value::String(s) => out.push(format!("{prefix}: {s}")),
        other => out.push(format!("{prefix}: {other}")),
    }
}

#[test]
fn suite_runs_a_few_instances() {
    let (code, report) = json(&["suite", "--count", "10", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(report["count"], 10);
    let total: u64 = report["verdicts"]
        .as_object()
        .unwrap()
        .values()
        .map(|v| v.as_u64().unwrap())
        .sum();
    assert_eq!(total, 20);
}
