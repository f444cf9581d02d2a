//! End-to-end checks of the wdx binary: construction round-trips, the
//! exit-code contract, and determinism across thread counts.

use assert_cmd::Command;
use predicates::prelude::*;
use serde_json::Value;

fn wdx() -> Command {
    Command::cargo_bin("wdx").unwrap()
}

fn stdout_of(cmd: &mut Command) -> String {
    let out = cmd.assert().success().get_output().stdout.clone();
    String::from_utf8(out).unwrap()
}

#[test]
fn construct_rm_text() {
    let out = stdout_of(wdx().args(["construct", "--m", "4", "--rule", "rm", "--r", "1", "--format", "text"]));
    assert!(out.starts_with("n=16 k=5 r=Some(1) w_min=Some(8)"));
    assert!(out.contains("1 x0 x1 x2 x3"));
}

#[test]
fn construct_then_wdist_roundtrip() {
    // feed the constructed code back through stdin and get Example-4 counts
    let report = stdout_of(wdx().args([
        "construct", "--m", "5", "--k", "12", "--rule", "wmin-beta",
    ]));
    let report: Value = serde_json::from_str(&report).unwrap();
    assert_eq!(report["n"], 32);
    assert_eq!(report["k"], 12);
    let code = serde_json::to_string(&report["code"]).unwrap();
    let out = stdout_of(
        wdx()
            .args(["wdist", "--code", "-", "--method", "auto"])
            .write_stdin(code),
    );
    let wd: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(wd["counts"]["16"], "2726");
    assert_eq!(wd["counts"]["8"], "108");
    assert_eq!(wd["counts"]["12"], "576");
}

#[test]
fn wdist_text_polynomial() {
    let out = stdout_of(wdx().args([
        "wdist", "--m", "5", "--k", "12", "--rule", "wmin-beta", "--format", "text",
    ]));
    assert_eq!(
        out.trim(),
        "1 + 108X^8 + 576X^12 + 2726X^16 + 576X^20 + 108X^24 + X^32"
    );
}

#[test]
fn wdist_low_range_spectrum() {
    let out = stdout_of(wdx().args([
        "wdist", "--m", "6", "--k", "22", "--rule", "rmxpolar", "--range", "low", "--format", "text",
    ]));
    assert!(out.lines().next().unwrap().starts_with("w=16: "));
}

#[test]
fn dual_checked_both_ways() {
    let out = stdout_of(wdx().args([
        "dual", "--m", "5", "--k", "12", "--rule", "wmin-beta",
    ]));
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["k"], 20);
    assert_eq!(report["distribution"]["counts"]["4"], "88");
    assert_eq!(report["checked_against"], "oracle on the dual set");
}

#[test]
fn brute_matches_closed_and_is_thread_independent() {
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        outputs.push(stdout_of(wdx().args([
            "wdist", "--m", "5", "--k", "12", "--rule", "wmin-beta",
            "--method", "brute", "--threads", threads,
        ])));
    }
    assert_eq!(outputs[0], outputs[1], "output depends on --threads");
    let closed = stdout_of(wdx().args([
        "wdist", "--m", "5", "--k", "12", "--rule", "wmin-beta", "--method", "closed",
    ]));
    assert_eq!(outputs[0], closed);
}

#[test]
fn verify_suites_pass() {
    wdx()
        .args(["verify", "--m", "4", "--suite", "orbits", "--suite", "alpha", "--suite", "poset"])
        .assert()
        .success()
        .stdout(
            predicate::str::contains("pass orbits")
                .and(predicate::str::contains("pass alpha"))
                .and(predicate::str::contains("pass poset")),
        );
}

#[test]
fn order_matches_published_table() {
    let out = stdout_of(wdx().args(["order", "--m", "5", "--format", "json"]));
    let pairs: Vec<Vec<u8>> = serde_json::from_str(&out).unwrap();
    let expect: Vec<Vec<u8>> = [
        [0, 1], [0, 2], [1, 2], [0, 3], [1, 3], [0, 4], [2, 3], [1, 4], [2, 4], [3, 4],
    ]
    .iter()
    .map(|p| p.to_vec())
    .collect();
    assert_eq!(pairs, expect);
    let text = stdout_of(wdx().args(["order", "--m", "5"]));
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().next().unwrap().ends_with("x0x1"));
}

#[test]
fn exit_code_contract() {
    // 2: malformed input (rule missing its parameter)
    wdx()
        .args(["construct", "--m", "5", "--rule", "polar"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("error:"));
    // 2: non-decreasing set rejected
    let bad = r#"{"m":4,"monomials":[[],[0],[1,2]]}"#;
    wdx()
        .args(["wdist", "--code", "-"])
        .write_stdin(bad)
        .assert()
        .code(2)
        .stderr(predicate::str::contains("error:"));
    // 2: unknown verification suite
    wdx()
        .args(["verify", "--m", "4", "--suite", "nonsense"])
        .assert()
        .code(2);
    // 2: brute force past the dimension cap
    wdx()
        .args(["wdist", "--m", "6", "--k", "22", "--rule", "polar", "--method", "brute", "--limit-k", "10"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("22"));
}

#[test]
fn timing_goes_to_stderr() {
    wdx()
        .args(["order", "--m", "3"])
        .assert()
        .success()
        .stderr(predicate::str::contains("# elapsed:"))
        .stdout(predicate::str::contains("elapsed").not());
}
