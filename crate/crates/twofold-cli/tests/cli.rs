//! End-to-end tests of the command-line interface.

use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_twofold"));
    // Keep runs hermetic: ambient overrides must not leak into the tests.
    cmd.env_remove("TWOFOLD_TOL").env_remove("TWOFOLD_INJECT_RESIDUAL");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

const PAIR_SCENARIO: &str = r#"{
  "schema_version": 1,
  "seed": 42,
  "state": { "pair": { "plus": [[0.6, 0.0], [0.0, 0.8]], "minus": [[1.0, 0.0], [0.0, 1.0]] } },
  "observables": [
    { "kind": "spin" },
    { "kind": "charge", "charge": 0.5 },
    { "kind": "energy", "energy": 1.5, "branch": "first" }
  ],
  "frames": [
    { "beta": [[[0.6, 0.0], [0.8, 0.0]], [[-0.8, 0.0], [0.6, 0.0]]], "mode": "operator-invariant" },
    {
      "beta": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
      "translation": [0.0, 0.0, 0.0, 1.4142135623730951],
      "mode": "operator-invariant"
    }
  ],
  "measurements": [
    { "slot": 0, "outcome": "sample" },
    { "slot": 1, "outcome": 0 }
  ]
}"#;

#[test]
fn verify_passes_and_prints_every_check() {
    let output = run(&["verify", "--samples", "40"]);
    let text = stdout(&output);
    assert!(output.status.success(), "verify failed:\n{text}");
    assert!(text.contains("cartan.metric-matrices"));
    assert!(text.contains("correlations.negative-controls"));
    assert!(text.contains(" 0 failed"), "summary missing:\n{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_filter_limits_the_run() {
    let output = run(&["verify", "--filter", "group.", "--samples", "30"]);
    assert!(output.status.success());
    let text = stdout(&output);
    for line in text.lines().filter(|l| l.starts_with("pass") || l.starts_with("FAIL")) {
        assert!(line.contains("group."), "unexpected check in filtered run: {line}");
    }
}

#[test]
fn verify_unknown_filter_is_an_input_error() {
    let output = run(&["verify", "--filter", "no-such-namespace"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("no check matches"));
}

#[test]
fn residual_injection_forces_a_named_failure() {
    let output = bin()
        .args(["verify", "--samples", "20"])
        .env("TWOFOLD_INJECT_RESIDUAL", "measurement.matrices=1.0")
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(1));
    let text = stdout(&output);
    assert!(text.contains("failed: measurement.matrices"), "missing failure line:\n{text}");
}

#[test]
fn tolerance_environment_variable_is_honored() {
    let strict = bin()
        .args(["verify", "--samples", "20"])
        .env("TWOFOLD_TOL", "1e-30")
        .output()
        .expect("binary runs");
    assert_eq!(strict.status.code(), Some(1), "an impossible tolerance must fail");

    let flag_wins = bin()
        .args(["verify", "--samples", "20", "--tol", "1e-10"])
        .env("TWOFOLD_TOL", "1e-30")
        .output()
        .expect("binary runs");
    assert!(flag_wins.status.success(), "--tol must override the environment");
}

#[test]
fn spectra_prints_canonical_entries() {
    let spin = run(&["spectra", "spin"]);
    assert!(spin.status.success());
    let text = stdout(&spin);
    assert!(text.contains("0.5"));
    assert!(text.contains("-0.5"));

    let conversion = run(&["spectra", "conversion"]);
    assert!(conversion.status.success());
    assert!(stdout(&conversion).contains("0.707106781187"));

    let unknown = run(&["spectra", "widget"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(stderr(&unknown).contains("UnknownKind"));
}

#[test]
fn scenario_reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().expect("temp dir");
    let scenario_path = dir.path().join("scenario.json");
    std::fs::write(&scenario_path, PAIR_SCENARIO).expect("write scenario");
    let out_a = dir.path().join("a.json");
    let out_b = dir.path().join("b.json");

    for out in [&out_a, &out_b] {
        let output = run(&[
            "scenario",
            "run",
            scenario_path.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(
            output.status.success(),
            "scenario failed:\n{}\n{}",
            stdout(&output),
            stderr(&output)
        );
    }
    let a = std::fs::read(&out_a).expect("report a");
    let b = std::fs::read(&out_b).expect("report b");
    assert_eq!(a, b, "reports differ between identical runs");

    let parsed: serde_json::Value = serde_json::from_slice(&a).expect("report is JSON");
    assert_eq!(parsed["version"], "1");
    assert!(parsed["checks"].as_array().is_some());
    let steps = parsed["scenario_steps"].as_array().expect("steps array");
    // prepare, entropy, three observables, two frames, two measurements.
    assert_eq!(steps.len(), 9);
    assert!(steps.iter().any(|s| s["step"] == "frame"));
    assert!(steps
        .iter()
        .any(|s| s["step"] == "measurement" && s["outputs"]["sampled"] == true));
}

#[test]
fn composite_scenarios_execute_and_collapse() {
    let scenario = r#"{
      "schema_version": 1,
      "seed": 9,
      "state": { "composite": { "factors": [
        { "sector": "plus", "components": [[1.0, 0.0], [1.0, 0.0]] },
        { "sector": "minus", "components": [[0.0, 0.0], [1.0, 0.0]] }
      ] } },
      "observables": [ { "kind": "polarization" } ],
      "measurements": [ { "slot": 0, "outcome": "sample" } ]
    }"#;
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("composite.json");
    std::fs::write(&path, scenario).expect("write scenario");
    let out = dir.path().join("report.json");
    let output = run(&[
        "scenario",
        "run",
        path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(
        output.status.success(),
        "composite scenario failed:\n{}\n{}",
        stdout(&output),
        stderr(&output)
    );
    let parsed: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&out).expect("report")).expect("JSON");
    let prepare = &parsed["scenario_steps"][0];
    assert_eq!(prepare["outputs"]["n_plus"], 1);
    assert_eq!(prepare["outputs"]["n_minus"], 1);
    let signed = prepare["outputs"]["signed_value"][0].as_f64().expect("real part");
    assert!((signed + 1.0).abs() < 1e-12, "signed value {signed} should be -1");
}

#[test]
fn malformed_scenarios_are_input_errors() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ not json").expect("write file");
    let out = dir.path().join("report.json");
    let output = run(&[
        "scenario",
        "run",
        path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("ParseError"));
}

#[test]
fn impossible_outcomes_surface_module_errors() {
    let scenario = r#"{
      "schema_version": 1,
      "state": { "pair": { "plus": [[1.0, 0.0], [0.0, 0.0]], "minus": [[1.0, 0.0], [0.0, 0.0]] } },
      "measurements": [ { "slot": 0, "outcome": 1 } ]
    }"#;
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("impossible.json");
    std::fs::write(&path, scenario).expect("write file");
    let out = dir.path().join("report.json");
    let output = run(&[
        "scenario",
        "run",
        path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("ZeroProbabilityOutcome"));
}
