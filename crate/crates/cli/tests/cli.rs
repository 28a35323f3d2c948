use std::process::{Command, Output};

use serde_json::Value;

fn permpat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permpat")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn alphas_report_infinite_values_as_strings() {
    let out = permpat(&["alphas", "--i", "1", "--j", "2", "--k", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["tool"], "permpat");
    assert_eq!(v["command"], "alphas");
    assert_eq!(v["result"]["alpha2"], "inf");
    assert_eq!(v["result"]["alpha1"], 4);
    assert_eq!(v["result"]["reps"]["alpha14"], "0120");
}

#[test]
fn classify_reports_sigma() {
    let out = permpat(&["classify", "--i", "1", "--j", "2", "--k", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["sigma"], "inf");
    assert_eq!(v["result"]["needs_review"], true);
    assert_eq!(v["config"]["k"], 3);
}

#[test]
fn degenerate_exponents_are_domain_errors() {
    let out = permpat(&["sigma", "--i", "2", "--j", "2", "--k", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(permpat(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(permpat(&["alphas", "--i", "1"]).status.code(), Some(64));
    // fixed mode without its exponents
    let out = permpat(&["search", "--m", "3", "--patterns", "0000", "--mode", "fixed", "--i", "1"]);
    assert_eq!(out.status.code(), Some(64));
    assert_eq!(permpat(&["--help"]).status.code(), Some(0));
    assert_eq!(permpat(&["--version"]).status.code(), Some(0));
}

#[test]
fn known_longest_word_avoids() {
    let out = permpat(&[
        "verify-word",
        "--word",
        "010210210210033001133001133001133000",
        "--m",
        "4",
        "--forbidden",
        "1,2,4,6,7",
        "--model",
        "cycle",
        "--format",
        "text",
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "avoids");
}

#[test]
fn verify_word_reports_witnesses() {
    let out = permpat(&["verify-word", "--word", "0120", "--m", "3", "--patterns", "0120", "--model", "cycle"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["avoids"], false);
    assert_eq!(v["result"]["witness"]["pattern"], "0120");
    assert_eq!(v["result"]["witness"]["block_len"], 1);
}

#[test]
fn search_reproduces_length_36() {
    let out = permpat(&["search", "--m", "4", "--forbidden", "1,2,4,6,7", "--model", "anycycle", "--cap", "40"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["max_length_found"], 36);
    assert_eq!(v["result"]["exhausted"], true);
    assert_eq!(v["config"]["model"], "anycycle");
}

#[test]
fn exhausted_budget_exits_2() {
    let out = permpat(&["search", "--m", "4", "--forbidden", "1,2,4,6,7", "--model", "cycle", "--cap", "500", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["result"]["budget_hit"], true);
    assert_eq!(v["result"]["exhausted"], false);
}

#[test]
fn reports_are_reproducible_across_thread_counts() {
    let args = ["search", "--m", "3", "--patterns", "0012,0102", "--model", "all", "--cap", "60", "--split-depth", "4"];
    let one = without_timing(json(&permpat(&[&args[..], &["--threads", "1"]].concat())));
    let four = without_timing(json(&permpat(&[&args[..], &["--threads", "4"]].concat())));
    assert_eq!(one["result"], four["result"]);
    let again = without_timing(json(&permpat(&[&args[..], &["--threads", "1"]].concat())));
    assert_eq!(one, again);
}

#[test]
fn sampled_search_records_its_seed() {
    let out = permpat(&["search", "--m", "3", "--sample-size", "4", "--seed", "7", "--model", "all", "--cap", "50"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["config"]["sampled_params"].as_array().unwrap().len(), 4);
}

#[test]
fn families_listing() {
    let out = permpat(&["families", "--family", "9"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"][0]["count"], 19);
    let all = json(&permpat(&["families"]));
    assert_eq!(all["result"].as_array().unwrap().len(), 10);
    assert_eq!(permpat(&["families", "--family", "11"]).status.code(), Some(1));
}

#[test]
fn verify_morphic_builtin_and_file() {
    let out = permpat(&["verify-morphic", "--builtin", "h-alpha", "--forbidden", "2,3,4,5,6,7,8,9,10,11,12,13,14", "--len", "1000"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["result"]["status"], "clean");
    assert_eq!(v["result"]["gap"], 30);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("alternating.json");
    std::fs::write(&path, r#"{"base": {"0": "01", "1": "01"}, "seed": 0}"#).unwrap();
    let out = permpat(&[
        "verify-morphic",
        "--spec",
        path.to_str().unwrap(),
        "--patterns",
        "0101",
        "--umax",
        "2",
        "--len",
        "8",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["result"]["status"], "witness");
    assert_eq!(v["result"]["result"]["witness"]["pattern"], "0101");
}

#[test]
fn partial_certificates_exit_2() {
    let out = permpat(&["verify-morphic", "--builtin", "ternary-thue", "--patterns", "0000", "--len", "5000", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["result"]["result"]["status"], "partial");
}

#[test]
fn text_format_renders() {
    let out = permpat(&["sigma", "--i", "1", "--j", "3", "--k", "7", "--format", "text"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("sigma "));
}
