use std::path::PathBuf;
use std::process::{Command, Output};

fn instance(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances").join(format!("{name}.json"))
}

fn qfb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfb")).args(args).output().expect("qfb runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn modified(name: &str, edit: impl FnOnce(&mut serde_json::Value)) -> PathBuf {
    let text = std::fs::read_to_string(instance(name)).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    edit(&mut v);
    let path = std::env::temp_dir().join(format!("qfb-{}-{name}.json", std::process::id()));
    std::fs::write(&path, v.to_string()).unwrap();
    path
}

#[test]
fn shipped_instances_validate() {
    for name in ["so2-point", "quantum-torus", "torus-homogeneous"] {
        let o = qfb(&["validate", instance(name).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}:\n{}", stdout(&o));
        assert!(stdout(&o).contains("0 failed"));
    }
}

#[test]
fn excluded_parameter_is_rejected() {
    let path = modified("so2-point", |v| v["parameters"][0]["value"] = "-1".into());
    let o = qfb(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(126));
    assert!(String::from_utf8_lossy(&o.stderr).contains("excluded parameter value"));
}

#[test]
fn parse_error_reports_position() {
    let path = std::env::temp_dir().join(format!("qfb-{}-broken.json", std::process::id()));
    std::fs::write(&path, "{\n  \"name\": \"x\",\n  \"group\": [1,\n").unwrap();
    let o = qfb(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(126));
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("line") && err.contains("column"), "{err}");
}

#[test]
fn corrupted_antipode_fails_with_witness() {
    let path = modified("so2-point", |v| v["group"]["antipode"]["u"] = "u".into());
    let o = qfb(&["validate", path.to_str().unwrap()]);
    let out = stdout(&o);
    assert!(o.status.code().unwrap() > 0);
    assert!(out.lines().any(|l| l.starts_with("FAIL hopf.antipode.law") && l.ends_with("witness: u")), "{out}");
}

#[test]
fn flat_homogeneous_bundle_passes_everything() {
    let o = qfb(&["run", instance("torus-homogeneous").to_str().unwrap(), "all"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.lines().any(|l| l.starts_with("PASS homogeneous.curvature")));
}

#[test]
fn point_regularity_bound_three() {
    let o = qfb(&["run", instance("so2-point").to_str().unwrap(), "regularity", "--bound", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("regular up to length 3"));
}

#[test]
fn point_curvature_series_table() {
    let o = qfb(&["run", instance("so2-point").to_str().unwrap(), "curvature"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    let line = out.lines().find(|l| l.contains("linebundle.curvature.series")).unwrap();
    for n in ["rho(u^4)", "rho(u^-4)"] {
        assert!(line.contains(n), "{line}");
    }
}

#[test]
fn exit_code_counts_failures() {
    let o = qfb(&["run", instance("so2-point").to_str().unwrap(), "all"]);
    let out = stdout(&o);
    let failed: Vec<&str> = out.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(o.status.code(), Some(failed.len() as i32));
    assert_eq!(failed.len(), 1);
    assert!(failed[0].starts_with("FAIL frame.coordinates"));
}

#[test]
fn reports_are_deterministic_and_sorted() {
    let path = instance("quantum-torus");
    let args = ["run", path.to_str().unwrap(), "torsion", "--seed", "7", "--samples", "20"];
    let a = qfb(&args);
    let b = qfb(&args);
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert!(out.starts_with("instance quantum-torus | suite torsion | seed 7"));
    let names: Vec<&str> = out.lines().filter_map(|l| l.split_whitespace().nth(1).filter(|_| l.contains('['))).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(out.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).all(|l| l.contains('[')));
}

#[test]
fn json_report_round_trips() {
    let o = qfb(&["run", instance("so2-point").to_str().unwrap(), "calculus", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suite"], "calculus");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["anchor"].as_str().is_some_and(|a| !a.is_empty())));
}

#[test]
fn unknown_suite_is_an_error() {
    let o = qfb(&["run", instance("so2-point").to_str().unwrap(), "spectral"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("spectral"));
}

#[test]
fn normal_form_of_expressions() {
    let path = instance("quantum-torus");
    let nf = |e: &str| stdout(&qfb(&["nf", path.to_str().unwrap(), e])).trim().to_string();
    assert_eq!(nf("xi v xi* v*"), "3/5+4/5i");
    assert_eq!(nf("xi xi* - 1"), "0");
}
