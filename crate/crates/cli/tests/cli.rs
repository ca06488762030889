use std::path::PathBuf;
use std::process::{Command, Output};

use condind_cli::scenario::Scenario;
use serde_json::Value;

fn canonical() -> String {
    format!("{}/../../scenarios/canonical.json", env!("CARGO_MANIFEST_DIR"))
}

fn condind(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_condind")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write_variant(name: &str, from: &str, to: &str) -> PathBuf {
    let text = std::fs::read_to_string(canonical()).unwrap();
    assert!(text.contains(from), "fixture lacks {from}");
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("{name}.json"));
    std::fs::write(&path, text.replacen(from, to, 1)).unwrap();
    path
}

#[test]
fn apply_esssup_on_canonical() {
    let out = condind(&["apply", "--scenario", &canonical(), "--indicator", "esssup", "--sigma", "H", "--var", "X"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["value"], serde_json::json!({"a": "3", "b": "3", "c": "6", "d": "6"}));
    assert_eq!(v["status"], "ok");
}

#[test]
fn risk_of_condexp_on_canonical() {
    let out = condind(&["risk", "--scenario", &canonical(), "--indicator", "condexp", "--var", "X"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["rho"], serde_json::json!({"a": "-2", "b": "-2", "c": "-4", "d": "-4"}));
}

#[test]
fn envelope_reports_every_date() {
    let out = condind(&["envelope", "--scenario", &canonical(), "--var", "payoff"]);
    let v = json(&out);
    assert_eq!(v["result"]["V"]["F0"]["a"], "2");
    assert_eq!(v["result"]["V"]["H"]["c"], "1/2");
}

#[test]
fn extended_expectation_uses_the_convention() {
    let out = condind(&["condexp-ext", "--scenario", &canonical(), "--var", "Y"]);
    let v = json(&out);
    assert_eq!(v["result"]["value"], serde_json::json!({"a": "0", "b": "0", "c": "1", "d": "1"}));
    assert_eq!(v["result"]["positive_part"]["a"], "inf");
}

#[test]
fn counterexamples_exit_with_one() {
    let out = condind(&["check", "--scenario", &canonical(), "--indicator", "esssup", "--property", "linear"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["checks"][0]["verdict"]["status"], "counterexample");

    let out = condind(&["recover-density", "--scenario", &canonical(), "--indicator", "esssup"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["hypothesis_failed"]["additivity"], true);
}

#[test]
fn verified_checks_exit_with_zero() {
    for property in ["axioms", "regular", "translation-invariant", "hplus"] {
        let out = condind(&["check", "--scenario", &canonical(), "--indicator", "esssup", "--property", property]);
        assert_eq!(out.status.code(), Some(0), "{property}");
    }
    let out = condind(&["tower", "--scenario", &canonical(), "--family", "condexp", "--samples", "50"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn invalid_scenarios_exit_with_two() {
    let null = write_variant("null_atom", r#""prob": "1/4"}"#, r#""prob": "0"}"#);
    let out = condind(&["apply", "--scenario", null.to_str().unwrap(), "--indicator", "esssup", "--var", "X"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("non-positive probability"));

    let order = write_variant("order", r#"["F0", "H", "F2"]"#, r#"["F2", "H", "F0"]"#);
    let out = condind(&["apply", "--scenario", order.to_str().unwrap(), "--indicator", "esssup", "--var", "X"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not refine"));

    let broken = write_variant("broken", r#""atoms": ["#, r#""atoms": [,"#);
    let out = condind(&["apply", "--scenario", broken.to_str().unwrap(), "--indicator", "esssup", "--var", "X"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn unresolved_names_exit_with_two() {
    for (flag, value) in [("--indicator", "nope"), ("--var", "Z")] {
        let mut args = vec!["apply", "--scenario", &canonical()[..], "--indicator", "esssup", "--var", "X"]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>();
        let at = args.iter().position(|a| a == flag).unwrap();
        args[at + 1] = value.into();
        let out = Command::new(env!("CARGO_BIN_EXE_condind")).args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{flag} {value}");
    }
}

#[test]
fn reports_are_deterministic() {
    let args = ["check", "--scenario", &canonical(), "--indicator", "mix:esssup", "--seed", "3", "--samples", "80"];
    let (a, b) = (condind(&args), condind(&args));
    assert_eq!(a.stdout, b.stdout);
    let other =
        condind(&["check", "--scenario", &canonical(), "--indicator", "mix:esssup", "--seed", "4", "--samples", "80"]);
    assert_ne!(a.stdout, other.stdout, "the seed should matter");
}

#[test]
fn text_format_and_cap_variable() {
    let out = Command::new(env!("CARGO_BIN_EXE_condind"))
        .args([
            "check",
            "--scenario",
            &canonical(),
            "--indicator",
            "esssup",
            "--property",
            "regular",
            "--format",
            "text",
        ])
        .env("CONDIND_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("check (seed 0): ok"), "{text}");
    assert!(text.contains("partial"), "a cap of 1 should force sampled events: {text}");
}

#[test]
fn projection_and_additivity_set() {
    let out = condind(&["project", "--scenario", &canonical(), "--var", "X", "--time", "H"]);
    let v = json(&out);
    assert_eq!(v["result"]["unique"], true);
    assert_eq!(v["result"]["solutions"][0]["d"], "6");

    let out = condind(&["additivity-set", "--scenario", &canonical(), "--var", "X", "--var2", "Y"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["cells"][0]["tags"], serde_json::json!([]));
    assert_eq!(v["result"]["cells"][1]["tags"], serde_json::json!(["F1"]));
}

#[test]
fn scenario_round_trip() {
    let s = Scenario::load(canonical().as_ref()).unwrap();
    assert_eq!(Scenario::from_json(&s.to_json()).unwrap(), s);
    assert!(s.densities.contains_key("rho"));
}
