//! End-to-end tests of the command-line surface.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vfcurve"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("vfcurve-test-{}-{name}", std::process::id()));
    p
}

const T1_FIBER: &str = r#"{"components":[{"id":0,"field":["1","5","0"]}],"nodes":[],"p_infty":{"comp":0,"at":"inf"},"markings":[{"comp":0,"at":"0"}]}"#;

#[test]
fn hopf_verify_prints_four_pass_rows() {
    let out = run(&["hopf", "verify"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches(" PASS").count(), 4, "{text}");
    assert!(text.contains("coassociativity"));
    assert!(text.contains("localization-compatibility"));
}

#[test]
fn hopf_law_evaluates_the_group_law() {
    let out = run(&["hopf", "law", "--a", "2", "--b", "3", "--tau", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "5");

    let out = run(&["hopf", "law", "--a", "1", "--b", "1", "--tau", "1"]);
    assert_eq!(stdout(&out).trim(), "3");

    // 1 + tau*a = 0: not a point, precondition exit code
    let out = run(&["hopf", "law", "--a", "-1", "--b", "0", "--tau", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn curve_pipeline_round_trips_through_files() {
    let input = scratch("t1.json");
    let stabilized = scratch("t1-stab.json");
    fs::write(&input, T1_FIBER).unwrap();

    let out = run(&["curve", "validate", "--in", input.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert_eq!(stdout(&out).trim(), "PASS");

    let out = run(&["curve", "ncr", "--in", input.to_str().unwrap()]);
    assert_eq!(stdout(&out).trim(), "5");

    let out = run(&[
        "curve", "check", "--in", input.to_str().unwrap(), "--kind", "v",
    ]);
    assert!(out.status.success());

    // stabilize at p_infty, then contract the bubble back
    let out = run(&[
        "curve", "stabilize",
        "--in", input.to_str().unwrap(),
        "--x", "0:inf",
        "--out", stabilized.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("\"new_x\""));

    let out = run(&[
        "curve", "contract",
        "--in", stabilized.to_str().unwrap(),
        "--kind", "c2",
        "--x", "1:1",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("\"component\": 1"), "{text}");

    fs::remove_file(&input).ok();
    fs::remove_file(&stabilized).ok();
}

#[test]
fn curve_act_translates_markings() {
    let input = scratch("act.json");
    fs::write(
        &input,
        r#"{"components":[{"id":0,"field":["1","0","0"]}],"nodes":[],"p_infty":{"comp":0,"at":"inf"},"markings":[{"comp":0,"at":"0"},{"comp":0,"at":"1"}]}"#,
    )
    .unwrap();
    let out = run(&[
        "curve", "act", "--in", input.to_str().unwrap(), "--shifts", "1,1",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let moved: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(moved["markings"][0]["at"], "1");
    assert_eq!(moved["markings"][1]["at"], "2");
    fs::remove_file(&input).ok();
}

#[test]
fn curve_iso_compares_two_files() {
    let a = scratch("iso-a.json");
    let b = scratch("iso-b.json");
    // x d/dx with marking at 1 vs marking at 7: isomorphic via scaling
    fs::write(&a, r#"{"components":[{"id":0,"field":["0","1","0"]}],"nodes":[],"p_infty":{"comp":0,"at":"inf"},"markings":[{"comp":0,"at":"1"}]}"#).unwrap();
    fs::write(&b, r#"{"components":[{"id":0,"field":["0","1","0"]}],"nodes":[],"p_infty":{"comp":0,"at":"inf"},"markings":[{"comp":0,"at":"7"}]}"#).unwrap();
    let out = run(&[
        "curve", "iso", "--in", a.to_str().unwrap(), "--with", b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("ISOMORPHIC"));

    // translation field with different gaps: not isomorphic
    fs::write(&a, r#"{"components":[{"id":0,"field":["1","0","0"]}],"nodes":[],"p_infty":{"comp":0,"at":"inf"},"markings":[{"comp":0,"at":"0"},{"comp":0,"at":"1"}]}"#).unwrap();
    fs::write(&b, r#"{"components":[{"id":0,"field":["1","0","0"]}],"nodes":[],"p_infty":{"comp":0,"at":"inf"},"markings":[{"comp":0,"at":"0"},{"comp":0,"at":"2"}]}"#).unwrap();
    let out = run(&[
        "curve", "iso", "--in", a.to_str().unwrap(), "--with", b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("NOT ISOMORPHIC"));
    fs::remove_file(&a).ok();
    fs::remove_file(&b).ok();
}

#[test]
fn strata_counts_and_dims() {
    let out = run(&["strata", "--family", "lm", "--n", "3", "--count"]);
    assert_eq!(stdout(&out).trim(), "13");

    let out = run(&["strata", "--family", "lm", "--n", "3", "--dims"]);
    let text = stdout(&out);
    assert!(text.contains("dim 0: 6"));
    assert!(text.contains("dim 1: 6"));
    assert!(text.contains("dim 2: 1"));

    let out = run(&["strata", "--family", "pn", "--n", "2", "--list"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2, "{text}");

    // out of range
    let out = run(&["strata", "--family", "lm", "--n", "9", "--count"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn limit_computes_a_boundary_curve() {
    let input = scratch("paths.json");
    fs::write(
        &input,
        r#"{"mode":"affine","paths":[{"params":["t"],"terms":[]},{"params":["t"],"terms":[{"exp":[-1],"coeff":"1"}]}]}"#,
    )
    .unwrap();
    let out = run(&["limit", "--in", input.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    let curve: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(curve["components"].as_array().unwrap().len(), 3);
    fs::remove_file(&input).ok();
}

#[test]
fn specialize_is_deterministic_across_thread_counts() {
    let args = ["specialize", "--n", "3", "--lm", "1|23", "--grid", "coarse", "--report", "json"];
    let first = stdout(&run(&args));
    let second = stdout(&run(&args));
    assert_eq!(first, second, "repeated runs must agree byte for byte");
    let parallel = stdout(&run(&[
        "specialize", "--n", "3", "--lm", "1|23", "--grid", "coarse", "--report", "json",
        "--jobs", "4",
    ]));
    assert_eq!(first, parallel, "thread count must not affect output");
    let doc: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(doc["maximal"].as_array().unwrap().len(), 2);
}

#[test]
fn fixtures_replay_matches_on_the_coarse_grid() {
    let out = run(&["fixtures", "replay", "figure3", "--grid", "coarse", "--jobs", "2"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.matches("MATCH").count(), 14, "13 rows + summary: {text}");
    assert!(!text.contains("MISMATCH"));
    assert!(text.trim_end().ends_with("all MATCH"));

    let out = run(&["fixtures", "replay", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_inputs_exit_with_code_one() {
    let missing = scratch("does-not-exist.json");
    let out = run(&["curve", "validate", "--in", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    // ncr without field vanishing at p_infty
    let input = scratch("badncr.json");
    fs::write(
        &input,
        r#"{"components":[{"id":0,"field":["1","0","0"]}],"nodes":[],"p_infty":{"comp":0,"at":"0"},"markings":[{"comp":0,"at":"1"}]}"#,
    )
    .unwrap();
    let out = run(&["curve", "ncr", "--in", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    fs::remove_file(&input).ok();
}
