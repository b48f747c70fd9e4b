//! Black-box tests of the command-line driver: exit codes, output schemas,
//! and byte-level determinism across separate processes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_toroidal")
}

fn curve(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("curves").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("failed to spawn the binary")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is not valid JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process was killed by a signal")
}

#[test]
fn analyze_emits_the_full_report() {
    let spec = curve("elliptic_f2.json");
    let out = run(&["analyze", spec.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["schema"], "toroidal-report/1");
    assert_eq!(v["invariants"]["genus"], 1);
    assert_eq!(v["invariants"]["class_number"], 3);
    assert_eq!(v["dimension"]["dimension"], 1);
    assert_eq!(v["dimension"]["formula"], "(g-1)*h+1");
    assert!(v.get("timing").is_none(), "timing must be opt-in");
    assert!(v.get("hecke").is_some() && v.get("twists").is_some());
}

#[test]
fn analyze_json_is_byte_deterministic_across_processes() {
    let spec = curve("genus2_f3.json");
    let a = run(&["analyze", spec.to_str().unwrap()]);
    let b = run(&["analyze", spec.to_str().unwrap()]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout, "two runs over the same spec must emit identical bytes");
}

#[test]
fn timing_block_is_flag_gated() {
    let spec = curve("rational_f2.json");
    let plain = json(&run(&["analyze", spec.to_str().unwrap()]));
    assert!(plain.get("timing").is_none());
    let timed = json(&run(&["analyze", spec.to_str().unwrap(), "--timing"]));
    assert!(timed["timing"]["total_ms"].is_number());
}

#[test]
fn verify_good_curve_exits_zero() {
    let spec = curve("elliptic_f4.json");
    let out = run(&["verify", spec.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["schema"], "toroidal-verify/1");
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn verify_singular_model_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("singular.json");
    // y^2 = x^3 in characteristic 2 (no linear h term) is singular.
    std::fs::write(&path, r#"{"p":2,"k":1,"model":"hyperelliptic","f":[0,0,0,1]}"#).unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let v = json(&out);
    assert_eq!(v["passed"], false);
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"nonsingular_model"), "failed checks: {failed:?}");
}

#[test]
fn malformed_coefficient_exits_one_and_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"p":3,"k":1,"model":"hyperelliptic","f":[0,1,"x"]}"#).unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("f[2]"), "stderr should name the offending entry: {stderr}");
}

#[test]
fn unknown_spec_field_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("extra.json");
    std::fs::write(&path, r#"{"p":2,"k":1,"model":"rational","junk":1}"#).unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("junk"));
}

#[test]
fn missing_file_exits_one() {
    let out = run(&["analyze", "/nonexistent/path/curve.json"]);
    assert_eq!(code(&out), 1);
    assert!(!out.stderr.is_empty());
}

#[test]
fn zeros_section_carries_l_table_and_pairs_only() {
    let spec = curve("elliptic_f3.json");
    let v = json(&run(&["zeros", spec.to_str().unwrap()]));
    assert_eq!(v["schema"], "toroidal-report/1");
    assert!(v.get("l_table").is_some() && v.get("zero_pairs").is_some());
    assert!(v.get("hecke").is_none() && v.get("dimension").is_none());
}

#[test]
fn hecke_table_section_carries_eigenvalues() {
    let spec = curve("elliptic_f2.json");
    let v = json(&run(&["hecke-table", spec.to_str().unwrap()]));
    assert!(v["hecke"].is_array());
    assert!(v.get("l_table").is_none());
    // The first certificate's table carries the forced zero eigenvalue at
    // each degree-1 place of this curve.
    let rows = v["hecke"][0]["places"].as_array().unwrap();
    let deg1: Vec<_> = rows.iter().filter(|r| r["degree"] == 1).collect();
    assert!(!deg1.is_empty());
    for row in deg1 {
        let lambda = row["lambda"].as_array().unwrap();
        assert!(lambda[0].as_f64().unwrap().abs() < 1e-9);
        assert!(lambda[1].as_f64().unwrap().abs() < 1e-9);
    }
}

#[test]
fn toroidal_section_carries_dimension_and_residues() {
    let spec = curve("genus2_f3.json");
    let v = json(&run(&["toroidal", spec.to_str().unwrap()]));
    assert_eq!(v["dimension"]["dimension"], 11);
    assert_eq!(v["dimension"]["predicted"], 11);
    assert!(v["residues"].is_array());
    assert!(v.get("zero_pairs").is_none());
}

#[test]
fn twist_search_finds_the_linear_cover_on_rational_f3() {
    let spec = curve("rational_f3.json");
    let v = json(&run(&["twist-search", spec.to_str().unwrap()]));
    let twists = &v["twists"];
    assert_eq!(twists["guaranteed"], true);
    assert_eq!(twists["witness"]["candidate"], "d = x");
    assert!(twists["witness"]["abs"].as_f64().unwrap() > 1e-9);
}

#[test]
fn text_format_renders_sections() {
    let spec = curve("elliptic_f2.json");
    let out = run(&["analyze", spec.to_str().unwrap(), "--format", "text"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("curve"), "text output should include the curve line: {text}");
    assert!(serde_json::from_str::<Value>(&text).is_err(), "text format must not be JSON");

    let out = run(&["verify", spec.to_str().unwrap(), "--format", "text"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("pass"));
}
