//! End-to-end checks of the command-line contract: exit codes, file
//! round-trips, and byte-identical artifacts.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn baire(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_baire"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("baire-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn run_reports_the_doubling_value() {
    let out = baire(&[
        "run",
        "--machine",
        "iterated-apply",
        "--oracle",
        "doubling",
        "--input",
        "000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("\"output\":\"00000000\""), "{stdout}");
}

#[test]
fn fuel_exhaustion_exits_three() {
    let out = baire(&[
        "run",
        "--machine",
        "max-length",
        "--oracle",
        "doubling",
        "--input",
        "01",
        "--fuel",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn malformed_inputs_exit_two() {
    let bad = tmp("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    let out = baire(&[
        "run",
        "--machine",
        bad.to_str().unwrap(),
        "--oracle",
        "doubling",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = baire(&["run", "--machine", "iterated-apply", "--oracle", "doubling", "--input", "012"]);
    assert_eq!(out.status.code(), Some(2));
    fs::remove_file(&bad).ok();
}

#[test]
fn identical_invocations_write_identical_traces() {
    let a = tmp("trace-a.txt");
    let b = tmp("trace-b.txt");
    for path in [&a, &b] {
        let out = baire(&[
            "run",
            "--machine",
            "max-length",
            "--oracle",
            "doubling",
            "--input",
            "0110",
            "--trace",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    fs::remove_file(&a).ok();
    fs::remove_file(&b).ok();
}

#[test]
fn step_count_check_pass_and_fail() {
    let trace = tmp("trace.txt");
    let ok_poly = tmp("ok-poly.json");
    let bad_poly = tmp("bad-poly.json");
    let run = baire(&[
        "run",
        "--machine",
        "iterated-apply",
        "--oracle",
        "doubling",
        "--input",
        "00",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0));
    // The frozen quadratic passes; the constant 1 cannot.
    fs::write(&ok_poly, r#"{"coeffs": [20, 40, 20]}"#).unwrap();
    fs::write(&bad_poly, r#"{"coeffs": [1]}"#).unwrap();
    let pass = baire(&[
        "check",
        "step-count",
        "--trace",
        trace.to_str().unwrap(),
        "--poly",
        ok_poly.to_str().unwrap(),
    ]);
    assert_eq!(pass.status.code(), Some(0));
    let fail = baire(&[
        "check",
        "step-count",
        "--trace",
        trace.to_str().unwrap(),
        "--poly",
        bad_poly.to_str().unwrap(),
    ]);
    assert_eq!(fail.status.code(), Some(1));
    let stdout = String::from_utf8(fail.stdout).unwrap();
    assert!(stdout.contains("witness"), "{stdout}");
    for f in [&trace, &ok_poly, &bad_poly] {
        fs::remove_file(f).ok();
    }
}

#[test]
fn running_time_check_finds_a_violating_input() {
    // No description tree bounds the iterated-apply machine on the doubling
    // oracle: searching inputs 0^k finds a witness well before k = 20.
    let bound = tmp("bound.json");
    fs::write(
        &bound,
        r#"{"poly": [{"exps": [1, 0], "coef": 500}, {"exps": [1, 1], "coef": 500}, {"exps": [0, 0], "coef": 500}],
            "children": [{"poly": [{"exps": [1], "coef": 1}], "children": []}]}"#,
    )
    .unwrap();
    let mut violated = None;
    for k in 0..=20usize {
        let input = "0".repeat(k);
        let out = baire(&[
            "check",
            "running-time",
            "--machine",
            "iterated-apply",
            "--oracle",
            "doubling",
            "--input",
            &input,
            "--bound",
            bound.to_str().unwrap(),
        ]);
        match out.status.code() {
            Some(0) => continue,
            Some(1) => {
                violated = Some(k);
                break;
            }
            other => panic!("unexpected exit {other:?}"),
        }
    }
    assert!(violated.is_some(), "no violating input up to length 20");
    fs::remove_file(&bound).ok();
}

#[test]
fn poly_verbs_roundtrip() {
    let leaf = tmp("leaf.json");
    fs::write(&leaf, r#"{"poly": [{"exps": [1], "coef": 1}], "children": []}"#).unwrap();
    let plussed = tmp("plussed.json");
    let out = baire(&[
        "poly",
        "plus",
        "--a",
        leaf.to_str().unwrap(),
        "--out",
        plussed.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    // Evaluating l(n) with l(n) = 2n at n = 3 gives 6.
    let out = baire(&[
        "poly",
        "eval",
        "--desc",
        plussed.to_str().unwrap(),
        "--table",
        "0",
        "--tail",
        "affine:2",
        "--n",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "6");
    // The majorant of the doubled tree is (1, 2X).
    let doubled = tmp("doubled.json");
    let out = baire(&[
        "poly",
        "sum",
        "--a",
        plussed.to_str().unwrap(),
        "--b",
        plussed.to_str().unwrap(),
        "--out",
        doubled.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = baire(&["poly", "majorant", "--a", doubled.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("\"height\": 1"), "{stdout}");
    // Arity violations in a description file exit 2.
    let bad = tmp("bad-desc.json");
    fs::write(&bad, r#"{"poly": [{"exps": [1, 1], "coef": 1}], "children": []}"#).unwrap();
    let out = baire(&["poly", "majorant", "--a", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    for f in [&leaf, &plussed, &doubled, &bad] {
        fs::remove_file(f).ok();
    }
}

#[test]
fn transformed_machines_serialize_and_run() {
    let dumped = tmp("composed.json");
    let out = baire(&[
        "transform",
        "compose",
        "--outer",
        "max-length",
        "--inner",
        "identity",
        "--out",
        dumped.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    // The serialized composite is loadable and behaves like the outer
    // machine against the identity-derived oracle.
    let direct = baire(&[
        "run",
        "--machine",
        "max-length",
        "--oracle",
        "doubling",
        "--input",
        "011",
    ]);
    let composed = baire(&[
        "run",
        "--machine",
        dumped.to_str().unwrap(),
        "--oracle",
        "doubling",
        "--input",
        "011",
    ]);
    assert_eq!(composed.status.code(), Some(0));
    let d: serde_json::Value =
        serde_json::from_slice(&direct.stdout).expect("direct run emits JSON");
    let c: serde_json::Value =
        serde_json::from_slice(&composed.stdout).expect("composed run emits JSON");
    assert_eq!(d["output"], c["output"]);
}

#[test]
fn adversary_reports_are_addressable() {
    let out = baire(&[
        "adversary",
        "flr-stress",
        "--machine",
        "max-length",
        "--revisions",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("revision_overflow"), "{stdout}");
}
