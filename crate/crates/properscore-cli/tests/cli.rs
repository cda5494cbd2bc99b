//! End-to-end tests driving the compiled binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_properscore"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("json output")
}

fn write_credence(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("properscore-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn standard_incoherent() -> PathBuf {
    write_credence(
        "standard.json",
        r#"{"outcomes": ["a", "b"], "credences": {"0": 0.0, "1": 0.6, "2": 0.6, "3": 1.0}}"#,
    )
}

#[test]
fn repair_finds_the_uniform_dominator() {
    let path = standard_incoherent();
    let out = run(&["repair", "--rule", "brier", "--credence", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["weights"], serde_json::json!([0.5, 0.5]));
    let margins = v["margins"].as_array().unwrap();
    for m in margins {
        assert!((m.as_f64().unwrap() - 0.02).abs() < 1e-9);
    }
}

#[test]
fn repair_output_round_trips_through_the_schema() {
    let path = standard_incoherent();
    let out = run(&["repair", "--rule", "brier", "--credence", path.to_str().unwrap()]);
    let text = stdout(&out);
    let parsed: properscore::dominance::DominatorResult =
        serde_json::from_str(text.trim_end()).expect("typed parse");
    let back = serde_json::to_string_pretty(&parsed).unwrap();
    assert_eq!(back, text.trim_end(), "parse -> serialize must be the identity");
}

#[test]
fn projection_method_agrees_on_the_symmetric_case() {
    let path = standard_incoherent();
    let out = run(&[
        "repair",
        "--rule",
        "brier",
        "--credence",
        path.to_str().unwrap(),
        "--method",
        "projection",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["trace"]["method"], "projection");
    let w = v["weights"].as_array().unwrap();
    assert!((w[0].as_f64().unwrap() - 0.5).abs() < 1e-9);
}

#[test]
fn repairing_a_coherent_credence_is_a_tool_error() {
    let path = write_credence(
        "coherent.json",
        r#"{"outcomes": ["a", "b"], "credences": {"0": 0.0, "1": 0.5, "2": 0.5, "3": 1.0}}"#,
    );
    let out = run(&["repair", "--rule", "brier", "--credence", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["error"]["message"].as_str().unwrap().contains("coherent"));
}

#[test]
fn gap_reports_the_bridge_and_exits_2() {
    let out = run(&[
        "gap",
        "--rule",
        "two-circle",
        "--resolution",
        "200",
        "--directions",
        "300",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    let gap = v["max_gap"].as_f64().unwrap();
    assert!((0.45..=0.55).contains(&gap), "gap {gap}");
}

#[test]
fn gap_passes_smooth_rules() {
    let out = run(&["gap", "--rule", "brier", "--resolution", "200", "--directions", "400"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["max_gap"].as_f64().unwrap() <= 0.01);
}

#[test]
fn identical_flags_give_byte_identical_output() {
    let args =
        ["gap", "--rule", "two-circle", "--resolution", "150", "--directions", "200"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), second.status.code());
}

#[test]
fn witness_bii_verifies() {
    let out = run(&["witness", "--case", "bii", "--verify", "--resolution", "500"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.trim_end().ends_with("VERIFIED"));
    // the JSON part parses as a bundle
    let json_part = text.trim_end().trim_end_matches("VERIFIED");
    let bundle: properscore::dominance::WitnessBundle =
        serde_json::from_str(json_part.trim_end()).unwrap();
    assert!(bundle.verification.verified);
}

#[test]
fn witness_bi_verifies() {
    let out = run(&["witness", "--case", "bi", "--verify", "--resolution", "500"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).trim_end().ends_with("VERIFIED"));
}

#[test]
fn witness_of_a_smooth_rule_is_a_finding() {
    let out = run(&["witness", "--case", "bii", "--rule", "brier", "--resolution", "300"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"]["message"].as_str().unwrap().contains("no witness"));
}

#[test]
fn score_evaluates_credence_files() {
    let path = standard_incoherent();
    let out = run(&["score", "--rule", "brier", "--credence", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let score = v["score"]["entries"].as_array().unwrap();
    assert!((score[0].as_f64().unwrap() + 0.52).abs() < 1e-12);

    // probability-only rules reject incoherent input
    let out = run(&["score", "--rule", "log", "--credence", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["error"]["message"].as_str().unwrap().contains("probabilities only"));
}

#[test]
fn verify_passes_strict_brier_and_flags_the_bridge_rule() {
    let out = run(&["verify", "--rule", "brier", "--mode", "strict", "--resolution", "32"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["propriety"]["passed"], serde_json::json!(true));

    let out = run(&[
        "verify",
        "--rule",
        "two-circle",
        "--condition-b",
        "--resolution",
        "64",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["condition_b"]["overall"], serde_json::json!("fails_density"));
}

#[test]
fn unknown_rules_are_tool_errors() {
    let out = run(&["verify", "--rule", "nonsense", "--mode", "strict"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["error"]["message"].as_str().unwrap().contains("unknown rule"));
}

#[test]
fn figure_emits_the_expected_roles() {
    let out = run(&["figure", "--rule", "two-circle", "--resolution", "100", "--directions", "150"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "role,x1,x2");
    let rest: Vec<&str> = lines.collect();
    let count = |role: &str| rest.iter().filter(|l| l.starts_with(role)).count();
    assert_eq!(count("F,"), 101);
    assert_eq!(count("hull_edge,"), 2);
    assert_eq!(count("witness,"), 1);
    assert_eq!(count("normal,"), 1);
}
