use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const QUADRICS: &str = "ring 6\n\
    x1*x3, x1*x4, x1*x5, x1*x6, x2*x3, x2*x4, x2*x5, x2*x6, x3*x5, x3*x6, x4*x5, x4*x6\n";
const CUBICS: &str = "ring 4\n\
    x1*x2*x3, x2^2*x3, x2*x3^2, x1*x2*x4, x2^2*x4, x2*x4^2, x1*x3*x4, x3^2*x4, x3*x4^2, x2*x3*x4\n";

fn polymat(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_polymat"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn quadrics_have_three_minimal_primes() {
    let out = polymat(&["ass", "-t", "1"], QUADRICS);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("(x1,x2,x3,x4)"));
    assert!(text.contains("(x1,x2,x5,x6)"));
    assert!(text.contains("(x3,x4,x5,x6)"));
}

#[test]
fn cubics_stabilize_depth_before_primes() {
    assert_eq!(stdout(&polymat(&["dstab"], CUBICS)).trim(), "1");
    assert_eq!(stdout(&polymat(&["astab"], CUBICS)).trim(), "2");
}

#[test]
fn veronese_pipes_into_astab() {
    let ideal = stdout(&polymat(&["veronese", "4", "2"], ""));
    assert_eq!(ideal.lines().next(), Some("ring 4"));
    assert_eq!(stdout(&polymat(&["astab"], &ideal)).trim(), "2");
}

#[test]
fn parse_errors_exit_two_with_position() {
    let out = polymat(&["info"], "ring 2\nx1*y\n");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2, column 4"), "{err}");
}

#[test]
fn unknown_check_id_is_a_usage_error() {
    let out = polymat(&["verify", "--only", "nope"], "");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stability_json_shape() {
    let v = json(&polymat(&["--json", "astab"], CUBICS));
    assert_eq!(v["astab"], 2);
    assert_eq!(v["dstab"], 1);
    assert_eq!(v["certified"], true);
    assert_eq!(v["ell"], 4);
    let trace = v["trace"].as_array().unwrap();
    assert!(!trace.is_empty());
    for (k, step) in trace.iter().enumerate() {
        assert_eq!(step["t"], k as u64 + 1);
        assert!(step["ass"].is_array());
        assert!(step["depth"].is_u64());
        assert!(step["gens"].is_u64());
    }
}

#[test]
fn other_json_shapes() {
    let v = json(&polymat(&["--json", "ass", "-t", "2"], QUADRICS));
    assert_eq!(v["t"], 2);
    assert!(v["ass"].as_array().unwrap().iter().all(Value::is_array));
    let v = json(&polymat(&["--json", "depth"], CUBICS));
    assert_eq!(v["depth"], 0);
    assert!(v["method"].is_string());
    let v = json(&polymat(&["--json", "gamma"], QUADRICS));
    assert!(v.is_object());
    let v = json(&polymat(&["--json", "info"], CUBICS));
    assert_eq!(v["polymatroidal"], true);
    assert_eq!(v["matroidal"], false);
    let v = json(&polymat(&["--json", "verify", "--regressions"], ""));
    assert!(v.is_object());
}

#[test]
fn power_round_trips_through_the_text_format() {
    let squared = stdout(&polymat(&["power", "-t", "2"], CUBICS));
    let again = stdout(&polymat(&["power", "-t", "1"], &squared));
    assert_eq!(squared, again);
}

#[test]
fn files_and_witness_directory() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ideals.txt");
    std::fs::write(&input, format!("{QUADRICS}\n{CUBICS}")).unwrap();
    let wit = dir.path().join("witnesses");
    let out = polymat(
        &[
            "verify",
            "--only",
            "lem-2.1,prop-2.10",
            "--input",
            input.to_str().unwrap(),
            "--witness-dir",
            wit.to_str().unwrap(),
        ],
        "",
    );
    assert!(out.status.code().is_some());
    assert!(stdout(&out).contains("lem-2.1"));
    let single = dir.path().join("cubic.txt");
    std::fs::write(&single, CUBICS).unwrap();
    let out = polymat(&["dstab", single.to_str().unwrap()], "");
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn almost_veronese_omission() {
    let out = stdout(&polymat(&["asfv", "4", "2", "--omit", "x1*x2"], ""));
    assert_eq!(out.lines().count(), 6);
    assert!(!out.contains("x1*x2\n"));
    let bad = polymat(&["asfv", "4", "2", "--omit", "x1^2"], "");
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn enumeration_is_reproducible() {
    let a = stdout(&polymat(&["--seed", "7", "enumerate", "7", "3", "--count", "3"], ""));
    let b = stdout(&polymat(&["--seed", "7", "enumerate", "7", "3", "--count", "3"], ""));
    assert_eq!(a, b);
    assert_eq!(a.matches("ring 7").count(), 3);
}
