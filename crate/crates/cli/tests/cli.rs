use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ionparity"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn report(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(format!("{name}.json"))).unwrap()).unwrap()
}

fn without_metadata(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("metadata");
    v
}

#[test]
fn design_reproduces_feasibility_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["design"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(dir.path(), "design");
    let res = &r["results"];
    assert!((res["g_parity"].as_f64().unwrap().abs() - 0.15).abs() < 1e-12);
    assert!((res["pulse_time_us"].as_f64().unwrap() - 20.94395).abs() < 1e-5);
    assert!((res["detuning_over_g1"].as_f64().unwrap() - 4000.0).abs() < 1e-9);
    assert!((res["omega0_over_g_parity"].as_f64().unwrap() - 74.6667).abs() < 1e-3);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["passed"], true);
    assert!(r["thresholds"].as_array().unwrap().iter().all(|t| t["passed"] == true));
}

#[test]
fn ideal_parity_pulse_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["parity-ideal", "--emit-plots"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(dir.path(), "parity-ideal");
    let worst = r["results"]["gate"]["worst_fidelity"].as_f64().unwrap();
    assert!((1.0 - worst).abs() < 1e-10);
    assert!(dir.path().join("parity-ideal.csv").exists());
    let svg = std::fs::read_to_string(dir.path().join("parity-ideal.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
}

#[test]
fn two_beam_matches_frozen_infidelity() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["parity-two-beam"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(dir.path(), "parity-two-beam");
    let inf = r["results"]["worst_infidelity"].as_f64().unwrap();
    assert!((inf - 0.9871186794588339).abs() < 1e-6, "{inf}");
    assert_eq!(r["results"]["gate"]["worst_probe"], "fock 4");
}

#[test]
fn reports_are_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        assert_eq!(run(&["parity-ideal", "--seed", "7"], dir.path()).status.code(), Some(0));
    }
    let (ra, rb) = (report(a.path(), "parity-ideal"), report(b.path(), "parity-ideal"));
    assert_eq!(
        serde_json::to_string(&without_metadata(ra.clone())).unwrap(),
        serde_json::to_string(&without_metadata(rb)).unwrap()
    );
    assert_eq!(ra["seed"], 7);
    assert_eq!(
        std::fs::read(a.path().join("parity-ideal.csv")).unwrap(),
        std::fs::read(b.path().join("parity-ideal.csv")).unwrap()
    );
}

#[test]
fn seed_changes_random_probes() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    run(&["parity-ideal", "--seed", "1"], a.path());
    run(&["parity-ideal", "--seed", "2"], b.path());
    let fa = report(a.path(), "parity-ideal")["results"]["gate"]["probes"].clone();
    let fb = report(b.path(), "parity-ideal")["results"]["gate"]["probes"].clone();
    assert_eq!(fa.as_array().unwrap().len(), fb.as_array().unwrap().len());
    assert_ne!(fa, fb);
}

#[test]
fn invalid_configs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        r#"{"scenario": "design", "parameters": {"g1": "3 MHz", "gee": 1}}"#,
        r#"{"scenario": "design", "extra": true}"#,
        r#"{"scenario": "parity-ideal"}"#,
        r#"{"scenario": "design", "parameters": {"g1": "3 parsecs"}}"#,
        r#"{"scenario": "design", "parameters": {"eta1": 0.3, "eta2": 0.3}}"#,
        r#"{"scenario": "design", "thresholds": {"min_trap_ratio": "big"}}"#,
        "not json",
    ];
    for (i, body) in cases.iter().enumerate() {
        let path = dir.path().join(format!("bad{i}.json"));
        std::fs::write(&path, body).unwrap();
        let out = run(&["design", "--config", path.to_str().unwrap()], dir.path());
        assert_eq!(out.status.code(), Some(2), "case {i}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let missing = run(&["design", "--config", "/nonexistent/cfg.json"], dir.path());
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn failed_threshold_exits_1_and_still_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("strict.json");
    std::fs::write(&path, r#"{"scenario": "design", "thresholds": {"min_trap_ratio": 100}}"#).unwrap();
    let out = run(&["design", "--config", path.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let r = report(dir.path(), "design");
    assert_eq!(r["passed"], false);
    let failed: Vec<_> = r["thresholds"].as_array().unwrap().iter().filter(|t| t["passed"] == false).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["name"], "omega0_over_g_parity");
    assert_eq!(failed[0]["limit"], 100.0);
}

#[test]
fn config_file_overrides_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("probes.json");
    std::fs::write(
        &suite,
        r#"{"max_n": 3, "probes": [{"kind": "fock", "n": 2}, {"kind": "coherent", "re": 0.3, "im": 0.0}]}"#,
    )
    .unwrap();
    let cfg = dir.path().join("ideal.json");
    std::fs::write(
        &cfg,
        r#"{
            "scenario": "parity-ideal",
            "parameters": {"g": "200 kHz"},
            "space": {"cutoffs": {"z": 10}},
            "run": {"probe_suite": "probes.json", "samples": 10, "csv": false, "output_name": "custom"}
        }"#,
    )
    .unwrap();
    let out = run(&["parity-ideal", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(dir.path(), "custom");
    assert!((r["results"]["g"].as_f64().unwrap() - 0.2).abs() < 1e-15);
    assert_eq!(r["results"]["gate"]["probes"].as_array().unwrap().len(), 2);
    assert_eq!(r["space"]["cutoffs"]["z"], 10);
    assert!((r["results"]["gate"]["pulse_time"].as_f64().unwrap() - std::f64::consts::PI / 0.2).abs() < 1e-12);
    assert!(!dir.path().join("custom.csv").exists());
}

#[test]
fn remaining_scenarios_pass_by_default() {
    let dir = tempfile::tempdir().unwrap();
    for s in ["not-gate", "time-reversal", "adiabatic-compare"] {
        let out = run(&[s], dir.path());
        assert_eq!(out.status.code(), Some(0), "{s}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(report(dir.path(), s)["passed"], true);
    }
    let r = report(dir.path(), "adiabatic-compare");
    let chosen = &r["results"]["chosen"];
    assert!(chosen["end_fidelity"].as_f64().unwrap() >= 0.99);
    assert!(chosen["max_virtual_population"].as_f64().unwrap() < chosen["virtual_population_envelope"].as_f64().unwrap());
    assert_eq!(chosen["elimination"], "second-order");
}

#[test]
fn shipped_configs_match_builtin_defaults() {
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    for s in ["design", "parity-ideal", "parity-two-beam", "not-gate", "time-reversal"] {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        let cfg = configs.join(format!("{s}.json"));
        assert_eq!(run(&[s, "--config", cfg.to_str().unwrap()], a.path()).status.code(), Some(0), "{s}");
        assert_eq!(run(&[s], b.path()).status.code(), Some(0), "{s}");
        assert_eq!(without_metadata(report(a.path(), s)), without_metadata(report(b.path(), s)), "{s}");
    }
}

#[test]
fn design_report_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["design"], dir.path()).status.code(), Some(0));
    let golden: Value = serde_json::from_str(include_str!("golden/design.json")).unwrap();
    assert_eq!(without_metadata(report(dir.path(), "design")), golden);
}
