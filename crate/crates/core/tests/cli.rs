//! End-to-end tests of the `regcover` binary.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use regcover::polyopt::GNResult;
use regcover::verify::VerifyReport;
use regcover::{PolynomialMap, SketchOperator};

struct Run {
    code: i32,
    json: Value,
}

fn regcover(args: &[&str], threads: Option<usize>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_regcover"));
    cmd.args(args);
    if let Some(n) = threads {
        cmd.env("REGCOVER_THREADS", n.to_string());
    }
    let out = cmd.output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8 output");
    Run {
        code: out.status.code().expect("exit code"),
        json: serde_json::from_str(stdout.trim()).unwrap_or(Value::Null),
    }
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("regcover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const CUBIC: &str = r#"{"n":1,"N":3,"coords":[[{"c":1,"e":[1]}],[{"c":1,"e":[2]}],[{"c":1,"e":[3]}]]}"#;

#[test]
fn poly_image_bound() {
    let r = regcover(&["bound", "poly-image", "--n", "1", "--d", "3", "--N", "3", "--t", "1", "--eps", "0.1"], None);
    assert_eq!(r.code, 0);
    assert!((r.json["log_bound"].as_f64().unwrap() - 7.128557356).abs() < 1e-8);
    assert_eq!(r.json["profile"]["n"], 1);
}

#[test]
fn config_file_fills_flags_and_flags_win() {
    let cfg = scratch("cover.json", r#"{"n": 1, "d": 3, "variant": "full", "N": 3, "t": 1, "eps": 0.5}"#);
    let cfg = cfg.to_str().unwrap();
    let from_file = regcover(&["bound", "poly-image", "--config", cfg], None);
    let flags = regcover(&["bound", "poly-image", "--n", "1", "--d", "3", "--N", "3", "--t", "1", "--eps", "0.5"], None);
    assert_eq!(from_file.code, 0);
    assert_eq!(from_file.json, flags.json);

    let overridden = regcover(&["bound", "poly-image", "--config", cfg, "--eps", "0.1"], None);
    assert!((overridden.json["log_bound"].as_f64().unwrap() - 7.128557356).abs() < 1e-8);
}

#[test]
fn seeded_sketches_are_reproducible() {
    let args = ["sketch", "apply", "--kind", "sors", "--m", "4", "--seed", "11", "--input", "1,2,3,4,5"];
    let a = regcover(&args, None);
    let b = regcover(&args, None);
    assert_eq!(a.code, 0);
    assert_eq!(a.json, b.json);
    let mut other = args;
    other[7] = "12";
    assert_ne!(regcover(&other, None).json, a.json);
}

#[test]
fn verify_output_is_independent_of_thread_count() {
    let map = scratch("cubic.json", CUBIC);
    let args = [
        "verify", "distortion", "--map", map.to_str().unwrap(), "--eps", "0.5", "--delta", "0.1", "--trials", "6",
        "--count", "3000", "--seed", "4",
    ];
    let one = regcover(&args, Some(1));
    let four = regcover(&args, Some(4));
    assert_eq!(one.code, four.code);
    assert_eq!(one.json, four.json);
}

#[test]
fn payloads_round_trip_through_the_library_types() {
    let gn = regcover(&["opt", "gn", "--map", CUBIC, "--x0", "0.7"], None);
    assert_eq!(gn.code, 0);
    let parsed: GNResult = serde_json::from_value(gn.json.clone()).unwrap();
    assert!(parsed.objective < 1e-8);

    let report = regcover(
        &["verify", "cover", "--map", CUBIC, "--t", "1.7320508", "--eps", "0.2", "--count", "20000", "--seed", "9"],
        None,
    );
    assert_eq!(report.code, 0);
    let parsed: VerifyReport = serde_json::from_value(report.json.clone()).unwrap();
    assert!(parsed.pass());
    assert_eq!(report.json["pass"], true);

    let map: PolynomialMap = serde_json::from_str(CUBIC).unwrap();
    assert_eq!(serde_json::from_value::<PolynomialMap>(serde_json::to_value(&map).unwrap()).unwrap(), map);
    let op: SketchOperator = serde_json::from_str(r#"{"kind":"sors","m":3,"M":5,"seed":2}"#).unwrap();
    assert_eq!(serde_json::from_value::<SketchOperator>(serde_json::to_value(&op).unwrap()).unwrap(), op);
}

#[test]
fn failed_verification_exits_with_two() {
    // a single Gaussian row cannot preserve norms to within 10%
    let r = regcover(
        &[
            "verify", "distortion", "--map", CUBIC, "--eps", "0.1", "--delta", "0.1", "--trials", "5", "--count",
            "2000", "--m", "1", "--seed", "1",
        ],
        None,
    );
    assert_eq!(r.code, 2);
    assert_eq!(r.json["pass"], false);
}

#[test]
fn input_errors_exit_with_one() {
    let r = regcover(&["tensor", "angle-prob", "--shape", "2,2", "--r", "1", "--eps", "pi/6"], None);
    assert_eq!(r.code, 1);
    assert_eq!(r.json["code"], "invalid_input");
    assert!(r.json["message"].as_str().unwrap().contains('8'));

    let r = regcover(&["opt", "gn", "--map", "{not json", "--x0", "1"], None);
    assert_eq!(r.code, 1);
    assert_eq!(r.json["code"], "malformed_json");

    let r = regcover(&["verify", "tube", "--map", CUBIC, "--eps", "0.1"], None);
    assert_eq!(r.code, 1, "seed is mandatory");
    assert_eq!(r.json["code"], "usage");
}
