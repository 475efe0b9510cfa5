use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bonnesen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bonnesen"))
        .args(args)
        .env_remove("BONNESEN_TOLERANCE_PROFILE")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, json: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, json).unwrap();
    p.to_str().unwrap().to_string()
}

const CUBE: &str =
    r#"{"dim": 3, "vertices": [[0,0,0],[1,0,0],[0,1,0],[1,1,0],[0,0,1],[1,0,1],[0,1,1],[1,1,1]]}"#;
const OCTA: &str =
    r#"{"dim": 3, "vertices": [[1,0,0],[-1,0,0],[0,1,0],[0,-1,0],[0,0,1],[0,0,-1]]}"#;
const SQUARE: &str = r#"{"dim": 2, "vertices": [[0,0],[1,0],[1,1],[0,1]]}"#;
const TALL: &str = r#"{"dim": 2, "vertices": [[0,0],[1,0],[1,2],[0,2]]}"#;

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn vol_prints_volume() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write(dir.path(), "cube.json", CUBE);
    let out = bonnesen(&["vol", &cube]);
    assert!(out.status.success());
    let v: f64 = String::from_utf8(out.stdout)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((v - 1.0).abs() < 1e-12);
}

#[test]
fn sum_writes_a_body() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write(dir.path(), "cube.json", CUBE);
    let octa = write(dir.path(), "octa.json", OCTA);
    let target = dir.path().join("sum.json");
    let out = bonnesen(&[
        "sum",
        &cube,
        &octa,
        "--alpha",
        "0.5",
        "--beta",
        "0.5",
        "-o",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = bonnesen(&["vol", target.to_str().unwrap()]);
    let v: f64 = String::from_utf8(out.stdout)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    let bm = ((1.0 + (4.0f64 / 3.0).cbrt()) / 2.0).powi(3);
    assert!(v > bm);
}

#[test]
fn bound_reports_stretched_squares() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", SQUARE);
    let b = write(dir.path(), "b.json", TALL);
    let out = bonnesen(&[
        "bound", &a, &b, "--alpha", "0.5", "--beta", "0.5", "--u", "0,1", "--mode", "section",
    ]);
    assert!(out.status.success());
    let r = stdout_json(&out);
    assert!((r["lhs"].as_f64().unwrap() - 1.5).abs() < 1e-12);
    assert!((r["bonnesen_rhs"].as_f64().unwrap() - 1.5).abs() < 1e-12);
    assert_eq!(r["equality_bonnesen"], true);
    assert_eq!(r["equality_holder"], false);
    assert!(r.get("M").is_some() && r.get("N").is_some());
}

#[test]
fn classify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", SQUARE);
    let b = write(dir.path(), "b.json", TALL);
    let out = bonnesen(&[
        "classify", &a, &b, "--alpha", "0.5", "--beta", "0.5", "--u", "0,1", "--mode", "section",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let w = stdout_json(&out);
    assert_eq!(w["kind"], "StretchedPair");
    assert!(w["a_prime"]["vertices"].is_array());

    let cube = write(dir.path(), "cube.json", CUBE);
    let octa = write(dir.path(), "octa.json", OCTA);
    let out = bonnesen(&[
        "classify", &cube, &octa, "--alpha", "0.5", "--beta", "0.5", "--u", "0,0,1", "--mode",
        "section",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn negative_direction_components_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write(dir.path(), "cube.json", CUBE);
    let out = bonnesen(&[
        "symmetrize",
        &cube,
        "--u",
        "-1,0,0",
        "--method",
        "steiner",
        "--grid",
        "8",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let body = stdout_json(&out);
    assert_eq!(body["dim"], 3);
}

#[test]
fn schwarz_rounding_via_cli() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write(dir.path(), "cube.json", CUBE);
    let target = dir.path().join("r.json");
    let out = bonnesen(&[
        "symmetrize",
        &cube,
        "--u",
        "0,0,1",
        "--method",
        "schwarz",
        "--slices",
        "16",
        "--ring",
        "32",
        "-o",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: f64 = String::from_utf8(bonnesen(&["vol", target.to_str().unwrap()]).stdout)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((v - 1.0).abs() < 0.03);
}

#[test]
fn generated_instance_classifies() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("inst");
    let prefix = prefix.to_str().unwrap();
    let out = bonnesen(&[
        "gen-equality",
        "--kind",
        "section-stretch",
        "--seed",
        "2",
        "--dim",
        "3",
        "-o",
        prefix,
    ]);
    assert!(out.status.success());
    let scenario: Value =
        serde_json::from_str(&std::fs::read_to_string(format!("{prefix}_scenario.json")).unwrap())
            .unwrap();
    let u: Vec<String> = scenario["u"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap().to_string())
        .collect();
    let alpha = scenario["alpha"].as_f64().unwrap().to_string();
    let beta = scenario["beta"].as_f64().unwrap().to_string();
    let out = bonnesen(&[
        "classify",
        &format!("{prefix}_A.json"),
        &format!("{prefix}_B.json"),
        "--alpha",
        &alpha,
        "--beta",
        &beta,
        "--u",
        &u.join(","),
        "--mode",
        "section",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(stdout_json(&out)["kind"], "StretchedPair");
}

#[test]
fn fuzz_writes_report_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let csv = dir.path().join("gaps.csv");
    let out = bonnesen(&[
        "fuzz",
        "--trials",
        "4",
        "--dim",
        "2",
        "--seed",
        "9",
        "--mode",
        "both",
        "--report",
        report.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["trials"], 4);
    assert_eq!(r["violations"].as_array().unwrap().len(), 0);
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 9);
}

#[test]
fn unreadable_input_fails() {
    let out = bonnesen(&["vol", "/nonexistent/body.json"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("reading"));
}
