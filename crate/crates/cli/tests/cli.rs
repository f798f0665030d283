//! End-to-end tests of the `pcm` binary: exit-code contract, file
//! round-trips through real files, and JSON schema stability.

use std::path::Path;
use std::process::{Command, Output};

fn pcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn emit_catalog(dir: &Path, name: &str, file: &str) -> String {
    let path = dir.join(file).to_string_lossy().into_owned();
    let out = pcm(&["catalog", name, "--emit", &path]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    path
}

#[test]
fn infer_r3_exits_zero_with_constants() {
    let dir = tempfile::tempdir().unwrap();
    let path = emit_catalog(dir.path(), "r3", "r3.pcm");
    let out = pcm(&["infer", &path]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("(kappa, mu) = (-1, 2)"));
}

#[test]
fn nullity_wrong_constants_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = emit_catalog(dir.path(), "r3", "r3.pcm");
    let out = pcm(&["nullity", &path, "--kappa", "-1", "--mu", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = pcm(&["nullity", &path, "--kappa", "-1", "--mu", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("2*x*e2"));
}

#[test]
fn deform_zero_c_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = emit_catalog(dir.path(), "r3", "r3.pcm");
    let out = pcm(&["deform", &path, "--c", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("nonzero"));
}

#[test]
fn rank_reports_stratum_and_point() {
    let dir = tempfile::tempdir().unwrap();
    let path = emit_catalog(dir.path(), "r3", "r3.pcm");
    let out = pcm(&["rank", &path, "--point", "0,5,7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("generic rank: 1"));
    assert!(text.contains("rank 0 stratum: { x }"));
    assert!(text.contains("rank at (0, 5, 7) = 0"));
}

#[test]
fn parse_error_exits_two_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.pcm");
    std::fs::write(&path, "mode = lie_algebra\nframe = xi, X, Y\n[X, Y] = 2*w\n").unwrap();
    let out = pcm(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("3:12"), "{text}");
    assert!(text.contains('w'));
}

#[test]
fn catalog_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["r3", "mu0", "lie:n=1,m=1", "lie:n=2,m=1", "lie:n=3,m=2"] {
        let first = emit_catalog(dir.path(), name, "first.pcm");
        let text1 = std::fs::read_to_string(&first).unwrap();
        // parse and re-emit through the deform identity (c = 1)
        let second = dir.path().join("second.pcm").to_string_lossy().into_owned();
        let out = pcm(&["deform", &first, "--c", "1", "--emit", &second]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stdout(&out));
        let text2 = std::fs::read_to_string(&second).unwrap();
        assert_eq!(text1, text2, "{name} did not round-trip");
    }
}

#[test]
fn special_c_chain_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let seed = emit_catalog(dir.path(), "mu0", "mu0.pcm");
    // c = 2/(2 - 4) = -1 lifts (-1, 0) to (-1, 4)
    let lifted = dir.path().join("mu4.pcm").to_string_lossy().into_owned();
    let out = pcm(&["deform", &seed, "--c", "-1", "--verify", "--emit", &lifted]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = pcm(&["infer", &lifted]);
    assert!(stdout(&out).contains("(kappa, mu) = (-1, 4)"));
    // c = 1 - 4/2 = -1 returns to (-1, 0)
    let back = dir.path().join("back.pcm").to_string_lossy().into_owned();
    let out = pcm(&["deform", &lifted, "--c", "-1", "--emit", &back]);
    assert_eq!(out.status.code(), Some(0));
    let out = pcm(&["infer", &back]);
    let text = stdout(&out);
    assert!(text.contains("(kappa, mu) = (-1, 0)"));
    assert!(text.contains("h != 0"), "{text}");
}

#[test]
fn json_output_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = emit_catalog(dir.path(), "r3", "r3.pcm");

    let out = pcm(&["--json", "infer", &path]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "infer");
    assert_eq!(v["kappa"], "-1");
    assert_eq!(v["mu"], "2");
    assert_eq!(v["exit"], 0);
    assert!(v["elapsed_ms"].is_number());

    let out = pcm(&["--json", "validate", &path]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "validate");
    assert_eq!(v["passed"], true);
    assert!(v["almost_paracontact"].is_array());
    // exact scalars are strings, never floats
    assert!(v["almost_paracontact"][0]["name"].is_string());

    let out = pcm(&["--json", "canonical", &path, "--point", "1,0,0"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["basis"]["residual"].is_number());
}

#[test]
fn canonical_requires_point_on_coordinate_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = emit_catalog(dir.path(), "r3", "r3.pcm");
    let out = pcm(&["canonical", &path]);
    assert_eq!(out.status.code(), Some(2));
    // Lie files need no point
    let lie = emit_catalog(dir.path(), "lie:n=1,m=1", "lie.pcm");
    let out = pcm(&["canonical", &lie]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn unknown_catalog_name_exits_two() {
    let out = pcm(&["catalog", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scalar_rendering_round_trips_in_reports() {
    // a deformation by 1/2 produces fractional exact scalars in the report
    let dir = tempfile::tempdir().unwrap();
    let path = emit_catalog(dir.path(), "lie:n=1,m=1", "lie.pcm");
    let out = pcm(&["--json", "deform", &path, "--c", "1/2", "--verify"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["c"], "1/2");
    assert_eq!(v["passed"], true);
}
