mod common;

use std::process::Command;

use tempfile::tempdir;

fn semiact(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_semiact"))
        .args(args)
        .current_dir(common::fixtures())
        .output()
        .unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

#[test]
fn golden_transcripts() {
    if let Err(failures) = common::check_golden() {
        panic!("{}", failures.join("\n"));
    }
}

#[test]
fn non_associative_table_reports_witness() {
    let (_, err, code) = semiact(&["validate", "non_associative.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("(0*0)*1"), "{err}");
}

#[test]
fn rees_output_feeds_back_in() {
    let dir = tempdir().unwrap();
    let expanded = dir.path().join("z4.json");
    let (_, _, code) = semiact(&["rees", "z4_two_lambda.json", "--out", expanded.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (out, _, code) = semiact(&["--json", "classify-semigroup", expanded.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["order"], 9);
    assert_eq!(v["brute_force"]["si"], false);
    assert_eq!(v["brute_force"]["uniform"], true);
}

#[test]
fn closed_form_needs_rees_input() {
    let (_, err, code) = semiact(&["congruence", "two_zero_act.json", "--pairs", "a,t1", "--closed-form"]);
    assert_eq!(code, 2);
    assert!(err.contains("Rees"), "{err}");
}

#[test]
fn override_lifts_budget() {
    let (_, _, code) = semiact(&["atlas", "--band", "2x2", "--max-states", "4", "--budget", "10"]);
    assert_eq!(code, 2);
    let (out, _, code) = semiact(&["atlas", "--band", "1x2", "--max-states", "2", "--budget", "10", "--override-budget"]);
    assert_eq!(code, 0, "{out}");
}
