//! End-to-end tests of the `gca` binary: output payloads, exit-code
//! classes, and JSON determinism.

use std::io::Write;
use std::process::{Command, Output};

fn gca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gca"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn assert_exit(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        stdout(out),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn bracket_reference_outputs() {
    let out = gca(&["bracket", "L[1]", "L[2]"]);
    assert_exit(&out, 0);
    assert_eq!(stdout(&out).trim(), "L[3]");

    let out = gca(&["bracket", "H[1]", "J[2]"]);
    assert_exit(&out, 0);
    assert_eq!(stdout(&out).trim(), "-J[3]");

    let out = gca(&["bracket", "I[1]", "I[5]"]);
    assert_exit(&out, 0);
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn bracket_input_errors_exit_2() {
    assert_exit(&gca(&["bracket", "L[", "L[1]"]), 2);
    assert_exit(&gca(&["bracket", "L[1]", "Lb[1]"]), 2);
}

#[test]
fn der_solve_passes_and_validates_windows() {
    let out = gca(&["--window", "8", "--interior", "4", "der-solve", "--degree", "0"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("interior dimension 5"), "{text}");
    assert!(text.contains("contains outer derivation D: yes"), "{text}");

    let out = gca(&["--window", "8", "der-solve", "--degree", "-2"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).contains("interior dimension 4"));

    // The reference precondition failure: window 2, interior 1, degree 3.
    let out = gca(&["--window", "2", "--interior", "1", "der-solve", "--degree", "3"]);
    assert_exit(&out, 2);
}

#[test]
fn replay_reference_invocations() {
    let out = gca(&["replay", "--lemma", "3.4", "--p", "1", "--window", "10"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("annihilator: 3"), "{text}");
    assert!(text.contains("result: PASS"), "{text}");

    let out = gca(&["replay", "--lemma", "3.2", "--i", "5", "--window", "14"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).contains("intersection: 0"));

    let out = gca(&["replay", "--lemma", "3.3", "--x", "I[2]+J[5]", "--window", "24"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("family: 2"), "{text}");
    assert!(text.contains("result: PASS"), "{text}");

    let out = gca(&["replay", "--lemma", "3.1ii", "--window", "6"]);
    assert_exit(&out, 0);

    let out = gca(&[
        "replay", "--lemma", "3.5", "--x", "I[1]+J[-1]", "--window", "48",
    ]);
    assert_exit(&out, 0);
    assert!(stdout(&out).contains("case: 2.2"));
}

#[test]
fn replay_bad_params_exit_2() {
    // Missing the required parameter.
    assert_exit(&gca(&["replay", "--lemma", "3.4", "--window", "10"]), 2);
    // Unknown check name.
    assert_exit(&gca(&["replay", "--lemma", "9.9"]), 2);
    // Window too small for the probes of 3.4.
    assert_exit(&gca(&["replay", "--lemma", "3.4", "--p", "2", "--window", "10"]), 2);
}

#[test]
fn replay_user_probes_can_be_too_small() {
    let out = gca(&[
        "replay", "--lemma", "3.3", "--x", "I[2]+J[5]", "--window", "24", "--probes", "1",
    ]);
    assert_exit(&out, 1);
}

fn write_instance(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(json.as_bytes()).expect("write");
    f
}

#[test]
fn extract_recovers_ad_h0() {
    let f = write_instance(
        r#"{
            "window": 12, "interior": 6,
            "table": [
                {"point": "L[0]", "value": "0"},
                {"point": "L[1]", "value": "0"},
                {"point": "I[0]+J[0]", "value": "I[0] - J[0]"}
            ]
        }"#,
    );
    let out = gca(&["extract", "--file", f.path().to_str().unwrap()]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("inner: H[0]"), "{text}");
    assert!(text.contains("outer: 0"), "{text}");
}

#[test]
fn extract_zero_instance() {
    let f = write_instance(
        r#"{
            "window": 12, "interior": 6,
            "table": [
                {"point": "L[0]", "value": "0"},
                {"point": "L[1]", "value": "0"},
                {"point": "I[0]+J[0]", "value": "0"},
                {"point": "H[2]", "value": "0"}
            ]
        }"#,
    );
    let out = gca(&["extract", "--file", f.path().to_str().unwrap()]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("inner: 0"), "{text}");
    assert!(text.contains("outer: 0"), "{text}");
}

#[test]
fn extract_rejections_exit_1() {
    // Value at the I0+J0 anchor outside span{I_0, J_0}.
    let f = write_instance(
        r#"{
            "window": 12, "interior": 6,
            "table": [
                {"point": "L[0]", "value": "0"},
                {"point": "L[1]", "value": "0"},
                {"point": "I[0]+J[0]", "value": "H[3]"}
            ]
        }"#,
    );
    let out = gca(&["extract", "--file", f.path().to_str().unwrap()]);
    assert_exit(&out, 1);
}

#[test]
fn extract_schema_errors_exit_2() {
    // Missing window field.
    let f = write_instance(r#"{"interior": 6, "table": []}"#);
    assert_exit(&gca(&["extract", "--file", f.path().to_str().unwrap()]), 2);
    // Duplicate point.
    let f = write_instance(
        r#"{
            "window": 12, "interior": 6,
            "table": [
                {"point": "L[0]", "value": "0"},
                {"point": "L[0]", "value": "0"}
            ]
        }"#,
    );
    assert_exit(&gca(&["extract", "--file", f.path().to_str().unwrap()]), 2);
    // Missing anchor is an input error, not an assertion failure.
    let f = write_instance(
        r#"{
            "window": 12, "interior": 6,
            "table": [
                {"point": "L[0]", "value": "0"},
                {"point": "L[1]", "value": "0"}
            ]
        }"#,
    );
    assert_exit(&gca(&["extract", "--file", f.path().to_str().unwrap()]), 2);
}

#[test]
fn fuzz_reference_invocations() {
    for what in ["jacobi", "isomorphism", "leibniz"] {
        let out = gca(&[
            "--window", "6", "fuzz", "--what", what, "--samples", "500", "--seed", "7",
        ]);
        assert_exit(&out, 0);
        assert!(stdout(&out).contains("pass"));
    }
    assert_exit(&gca(&["fuzz", "--what", "nonsense"]), 2);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args = [
        "--format", "json", "--window", "6", "fuzz", "--what", "jacobi", "--samples", "200",
        "--seed", "7",
    ];
    let a = gca(&args);
    let b = gca(&args);
    assert_exit(&a, 0);
    assert_eq!(a.stdout, b.stdout);

    let args = ["--format", "json", "replay", "--lemma", "3.4", "--p", "1", "--window", "10"];
    let a = gca(&args);
    let b = gca(&args);
    assert_exit(&a, 0);
    assert_eq!(a.stdout, b.stdout);
    // The JSON payload parses and carries the replay schema.
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).expect("valid JSON");
    assert_eq!(v["check"], "3.4");
    assert_eq!(v["pass"], true);
    assert_eq!(v["dimensions"]["annihilator"], 3);
}

#[test]
fn json_error_reports_carry_codes() {
    let out = gca(&["--format", "json", "bracket", "L[1]", "Lb[1]"]);
    assert_exit(&out, 2);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(v["code"], "BasisMismatch");
}
