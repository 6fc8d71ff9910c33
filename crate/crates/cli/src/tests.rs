// SPDX-License-Identifier: Apache-2.0

//! Command behaviour, driven in-process through the same entry point as
//! `main`. The acceptance suite covers the built binary end to end.

use std::path::{Path, PathBuf};

use decoherence_core::scenarios::{data_section, CSV_HEADER};

use decoherence_core::quantities::ConstantValues;

use super::{invoke, Invocation};

fn run(args: &[&str]) -> Invocation {
    invoke(
        std::iter::once("mtdecohere").chain(args.iter().copied()),
        None,
    )
}

fn json(o: &Invocation) -> serde_json::Value {
    serde_json::from_str(&o.stdout).expect("valid JSON")
}

fn demo() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("demo/audit_demo.json")
        .display()
        .to_string()
}

#[test]
fn missing_scenario_is_an_input_error() {
    let out = run(&["compute", "/nonexistent/scenario.json"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("neither a preset"));
}

#[test]
fn unknown_flags_exit_two() {
    let out = run(&["compute", "tegmark-baseline", "--bogus"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("--bogus"), "{}", out.stderr);
}

#[test]
fn malformed_scenario_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"label\": \"x\",\n  oops\n}").unwrap();
    let out = run(&["compute", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 3"));
}

#[test]
fn compute_reports_every_model() {
    let out = run(&["compute", "dipole-corrected", "--json"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    let models: Vec<&str> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["model"].as_str().unwrap())
        .collect();
    assert_eq!(models, ["ion_coulomb", "dipole", "orch_or"]);
    assert_eq!(v["manifest"]["constants_version"], "codata2018-v1");
}

#[test]
fn text_report_names_models() {
    let out = run(&["compute", "tegmark-baseline", "--digits", "3"]);
    let text = &out.stdout;
    assert!(
        text.contains("ion_coulomb") && text.contains("reference:"),
        "{text}"
    );
}

#[test]
fn seed_override_is_echoed() {
    let out = run(&["compute", "dipole-corrected", "--json", "--seed", "12345"]);
    assert_eq!(json(&out)["manifest"]["seed"], 12345);
}

#[test]
fn round_trip_through_presets_show() {
    let out = run(&["presets", "--show", "gel-phase"]);
    assert_eq!(out.code, 0);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gel.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let a = json(&run(&["compute", "gel-phase", "--json"]));
    let b = json(&run(&["compute", path.to_str().unwrap(), "--json"]));
    assert_eq!(a["results"], b["results"]);
}

#[test]
fn sweep_is_deterministic_and_ordered() {
    let args = [
        "sweep",
        "dipole-corrected",
        "--param",
        "T",
        "--grid",
        "310,300,77",
    ];
    let (a, b) = (run(&args).stdout, run(&args).stdout);
    assert_eq!(data_section(&a), data_section(&b));
    let data = data_section(&a);
    let mut lines = data.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER.join(",").as_str()));
    let values: Vec<f64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 9);
    assert!(values.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn sweep_error_points_become_rows() {
    let out = run(&[
        "sweep",
        "dipole-corrected",
        "--param",
        "cos_theta",
        "--grid",
        "0,0.5,1",
    ]);
    assert_eq!(out.code, 0);
    let text = &out.stdout;
    let errors: Vec<&str> = text
        .lines()
        .filter(|l| l.contains(",dipole,") && l.contains("error:"))
        .collect();
    assert!(!errors.is_empty(), "{text}");
    for row in errors {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[3], "", "tau must be empty on error rows: {row}");
        assert!(fields[6].starts_with("error:"), "{row}");
    }
}

#[test]
fn gel_sweep_shows_quartic_scaling() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gel.csv");
    let out = run(&[
        "sweep",
        "dipole-corrected",
        "--param",
        "gel_factor",
        "--grid",
        "1,10",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains(&format!("# outputs={}", path.display())));
    let taus: Vec<f64> = data_section(&text)
        .lines()
        .skip(1)
        .filter(|l| l.split(',').nth(2) == Some("dipole"))
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert_eq!(taus.len(), 2);
    assert!((taus[1] / taus[0] / 1e4 - 1.0).abs() < 1e-12);
}

#[test]
fn sweep_unit_must_match_parameter() {
    let out = run(&[
        "sweep",
        "dipole-corrected",
        "--param",
        "T",
        "--grid",
        "1",
        "--unit",
        "nm",
    ]);
    assert_eq!(out.code, 2);
}

#[test]
fn empty_audit_document_has_no_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    std::fs::write(&path, "").unwrap();
    let out = run(&["audit", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.code, 0);
    assert_eq!(json(&out)["verdicts"].as_array().unwrap().len(), 0);
}

#[test]
fn demo_audit_flags_the_derivative() {
    let out = run(&["audit", &demo()]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("1 mismatched"));
}

#[test]
fn compare_reports_ratios() {
    let v = json(&run(&["compare", "dipole-corrected", "--json"]));
    assert_eq!(v["comparison"]["dipole_ratio_met"], true);
    assert_eq!(v["comparison"]["ratios"].as_array().unwrap().len(), 3);
}

#[test]
fn missing_constants_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing.json");
    let out = invoke(["mtdecohere", "compute", "tegmark-baseline"], Some(path));
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("missing.json"), "{}", out.stderr);
}

#[test]
fn constants_override_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let path: PathBuf = dir.path().join("constants.json");
    let mut values = serde_json::to_value(ConstantValues::codata2018()).unwrap();
    values["version"] = "custom-v1".into();
    values["gravitational"] = serde_json::json!(2.0 * 6.67430e-11);
    std::fs::write(&path, values.to_string()).unwrap();
    let base = json(&run(&["compute", "orchor-500ms", "--json"]));
    let out = invoke(
        ["mtdecohere", "compute", "orchor-500ms", "--json"],
        Some(path),
    );
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = json(&out);
    assert_eq!(v["manifest"]["constants_version"], "custom-v1");
    let tau = |v: &serde_json::Value| v["results"][2]["tau_seconds"].as_f64().unwrap();
    assert!((tau(&base) / tau(&v) - 2.0).abs() < 1e-12);
}

#[test]
fn help_goes_to_stdout_with_success() {
    let out = run(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("sweep") && out.stderr.is_empty());
}
