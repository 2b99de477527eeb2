//! End-to-end tests of the `espwalk` binary: flag handling, exit codes,
//! file formats, output determinism, and the verify harness self-test.

use std::io::Write;
use std::process::{Command, Output};

fn espwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_espwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn espwalk_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_espwalk"));
    cmd.args(args);
    for (key, value) in env {
        cmd.env(key, value);
    }
    cmd.output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn analyze_confirms_the_near_complete_fixture() {
    let out = espwalk(&[
        "analyze", "--n", "1", "--classes", "10,01,11", "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("pst: admits, minimum time pi/2^1"));
    assert!(text.contains("balanced_time=pi/2^2"));
    assert!(text.contains("[agree] pst_min_time"));
    assert!(text.contains("scheme form U = lambda*L(z)"));
}

#[test]
fn analyze_rejects_non_generating_sets_by_default() {
    let out = espwalk(&["analyze", "--n", "1", "--classes", "10", "--include-z"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("does not generate"));

    let out = espwalk(&[
        "analyze", "--n", "1", "--classes", "10", "--include-z", "--allow-disconnected",
        "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("connected: false"));
}

#[test]
fn analyze_reports_negative_instances() {
    let out = espwalk(&["analyze", "--n", "1", "--classes", "10,01", "--verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("does not admit"));
    assert!(text.contains("witness eigenvalue 0"));
}

#[test]
fn analyze_reads_connection_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("conn.json");
    std::fs::write(
        &path,
        r#"{"n": 2, "classes": ["1000", "0100", "1100", "0010", "0001", "0011"], "include_z": false}"#,
    )
    .unwrap();
    let out = espwalk(&["analyze", "--file", path.to_str().unwrap(), "--verify", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["pst"]["admits"], true);
    assert_eq!(doc["pst"]["min_time"]["log2_denominator"], 2);
    assert_eq!(doc["oracle"]["all_agree"], true);
}

#[test]
fn analyze_rejects_malformed_files_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    let mut file = std::fs::File::create(&path).unwrap();
    writeln!(file, "{{\"n\": 1,").unwrap();
    writeln!(file, "  \"classes\": [\"10\", \"xx\"]}}").unwrap();
    let out = espwalk(&["analyze", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line"), "{}", stderr(&out));
}

#[test]
fn analyze_honours_the_oracle_order_cap() {
    let out = espwalk_env(
        &["analyze", "--n", "2", "--classes", "1000,0100,0010,0001,1111", "--verify"],
        &[("ESPWALK_MAX_ORDER", "8")],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("ESPWALK_MAX_ORDER"));
}

#[test]
fn analyze_extra_times_appear_in_the_report() {
    let out = espwalk(&[
        "analyze", "--n", "1", "--classes", "10,01,11", "--verify", "--extra-time", "3/2^1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    // 3τ₀ is an odd multiple of the minimum time, so transfer recurs there.
    let text = stdout(&out);
    assert!(text.contains("extra(3*pi/2^1)"));
    assert!(text.contains("observed pst"), "{text}");
}

#[test]
fn search_is_byte_deterministic() {
    let args = ["search", "--n", "1", "--verify-sample", "5", "--seed", "42", "--json"];
    let first = espwalk(&args);
    let second = espwalk(&args);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    assert_eq!(first.stdout, second.stdout);

    let doc: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(doc["total_valid"], 7);
    assert_eq!(doc["counts"]["pst_only"], 3);
}

#[test]
fn search_rejects_unsupported_n() {
    let out = espwalk(&["search", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spread_take_two_confirms_pst_on_order_32() {
    let out = espwalk(&["spread", "--n", "2", "--take", "2", "--verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("prediction: PST at pi/2^2"));
    assert!(text.contains("[agree] pst_min_time at pi/2^2"));
}

#[test]
fn spread_take_two_n3_confirms_balanced_fr_on_order_128() {
    let out = espwalk(&["spread", "--n", "3", "--take", "2", "--verify", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["prediction"]["kind"], "pst_and_balanced_fr");
    let confirmations = doc["analysis"]["oracle"]["confirmations"].as_array().unwrap();
    let balanced = confirmations
        .iter()
        .find(|c| c["label"] == "balanced_time")
        .expect("balanced confirmation present");
    assert_eq!(balanced["agrees"], true);
    assert_eq!(balanced["time"]["log2_denominator"], 3);
}

#[test]
fn spread_take_one_fails_to_span() {
    let out = espwalk(&["spread", "--n", "2", "--take", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("does not generate"));
}

#[test]
fn spread_reads_spread_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spread.txt");
    std::fs::write(
        &path,
        "# two members of a 2-spread in F_2^4\n1000,0100\n0010,0001\n",
    )
    .unwrap();
    let out = espwalk(&[
        "spread", "--n", "2", "--k", "2", "--file", path.to_str().unwrap(), "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    std::fs::write(&path, "1000,0100\n1000,0001\n").unwrap();
    let out = espwalk(&["spread", "--n", "2", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("overlap"), "{}", stderr(&out));
}

#[test]
fn verify_quick_passes_within_budget() {
    let start = std::time::Instant::now();
    let out = espwalk(&["verify", "quick"]);
    let elapsed = start.elapsed();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("[PASS] spectrum-oracle-equivalence"));
    assert!(!text.contains("[FAIL]"));
    assert!(elapsed < std::time::Duration::from_secs(10), "{elapsed:.2?}");
}

#[test]
fn verify_json_document_is_versioned() {
    let out = espwalk(&["verify", "quick", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["passed"], true);
    assert!(doc["outcomes"].as_array().unwrap().len() >= 9);
}

#[test]
fn verify_detects_injected_faults() {
    // Harness self-test: flipping the criteria-side verdict must surface as
    // a named disagreement with exit code 3.
    let out = espwalk_env(&["verify", "quick"], &[("ESPWALK_FAULT_INJECT", "pst")]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("[FAIL] pst-criterion-oracle-agreement"), "{text}");
    assert!(text.contains("\"failures\""), "machine-readable list expected: {text}");
    assert!(text.contains("pst_decision"), "{text}");
}

#[test]
fn unknown_flags_exit_with_usage_error() {
    let out = espwalk(&["analyze", "--nope"]);
    assert_eq!(out.status.code(), Some(2));
}
