use std::collections::BTreeSet;
use std::path::PathBuf;

use qfb_core::homogeneous::torus_definition;
use qfb_core::instance::{Instance, InstanceDef};
use qfb_core::linebundle::LineSpec;
use qfb_core::suites::{run, RunOptions};

fn shipped(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances").join(format!("{name}.json"));
    std::fs::read_to_string(path).unwrap()
}

fn builders() -> Vec<InstanceDef> {
    vec![
        LineSpec::point(Some("2"), Some("1")).definition().unwrap(),
        LineSpec::quantum_torus(Some("2"), Some("3/5+4/5 i"), Some("1")).definition().unwrap(),
        torus_definition(),
    ]
}

#[test]
fn shipped_files_match_builders() {
    for def in builders() {
        let inst = Instance::load(def).unwrap();
        let file = shipped(inst.name());
        assert_eq!(file.trim_end(), inst.to_json(), "{} is stale; rerun the export_instances example", inst.name());
        assert_eq!(Instance::from_json(&file).unwrap().to_json(), inst.to_json());
    }
}

#[test]
fn line_bundle_files_are_recognised() {
    let defs = builders();
    assert!(LineSpec::recognise(&defs[0]).is_some());
    assert!(LineSpec::recognise(&defs[1]).is_some());
    assert!(LineSpec::recognise(&defs[2]).is_none());
    let mut edited = defs[0].clone();
    edited.bundle.relations.pop();
    assert!(LineSpec::recognise(&edited).is_none());
}

#[test]
fn check_names_are_unique_in_full_runs() {
    for def in builders() {
        let inst = Instance::load(def).unwrap();
        let report = run(&inst, "all", RunOptions { samples: Some(10), ..RunOptions::default() }).unwrap();
        let mut seen = BTreeSet::new();
        for c in &report.checks {
            assert!(seen.insert(c.name.clone()), "duplicate check {} in {}", c.name, inst.name());
            assert!(!c.anchor.is_empty(), "{} has no anchor", c.name);
        }
    }
}

#[test]
fn unknown_suite_is_rejected() {
    let inst = Instance::load(torus_definition()).unwrap();
    assert!(run(&inst, "spectral", RunOptions::default()).is_err());
}
