use qfb_core::connection::{curvature_extract, verify_frame};
use qfb_core::linebundle::{holomorphic_split, LineBundle, LineSpec};
use qfb_core::ncalg::NcPoly;
use qfb_core::report::Check;

fn assert_all(checks: &[Check]) {
    let bad: Vec<String> = checks
        .iter()
        .filter(|c| c.failed())
        .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()))
        .collect();
    assert!(bad.is_empty(), "failed checks:\n{}", bad.join("\n"));
}

fn point() -> LineBundle {
    LineSpec::point(Some("2"), Some("1")).build().unwrap()
}

fn torus() -> LineBundle {
    LineSpec::quantum_torus(Some("2"), Some("3/5+4/5 i"), Some("1")).build().unwrap()
}

#[test]
fn point_fields_match_closed_forms() {
    let def = LineSpec::point(Some("2"), Some("1")).definition().unwrap();
    assert_eq!(def.frame.fields["xi"], vec!["1".to_string(), "-2 xi^2".to_string()]);
    assert_eq!(def.frame.fields["xi*"], vec!["-(1/2) xi*^2".to_string(), "1".to_string()]);
}

#[test]
fn point_invariants() {
    assert_all(&point().verify(40, 3));
}

#[test]
fn torus_invariants() {
    assert_all(&torus().verify(20, 5));
}

#[test]
fn symbolic_point_invariants() {
    let lb = LineSpec::point(None, None).build().unwrap();
    assert_all(&lb.verify(10, 7));
    assert!(lb.golden_curvature_check().passed());
}

#[test]
fn point_golden_curvature() {
    let lb = point();
    assert!(lb.golden_curvature_check().passed());
    let hor = &lb.inst.hor;
    let rho = curvature_extract(hor, &lb.inst.pairs, &lb.inst.nabla);
    let psi_psis = hor.mul(&hor.theta(1), &hor.theta(0));
    assert_eq!(rho.values[0], hor.alg.nf(&psi_psis.scale(&(-3).into())));
    assert_eq!(lb.curvature_direct(2), hor.alg.nf(&psi_psis.scale(&(-15).into())));
}

#[test]
fn curvature_series() {
    let c = point().curvature_series_check(4);
    assert!(c.passed(), "{:?}", c.witness);
    let c = torus().curvature_series_check(3);
    assert!(c.passed(), "{:?}", c.witness);
}

#[test]
fn frames_pass_definition_checks() {
    for lb in [point(), torus()] {
        let inst = &lb.inst;
        let samples = inst.samples(30, 11);
        let checks = verify_frame(&inst.bundle, &inst.hor, &inst.nabla, inst.coords.as_ref(), &samples);
        let bad: Vec<_> = checks.iter().filter(|c| c.failed()).map(|c| c.name.clone()).collect();
        if inst.coords.is_some() {
            assert_all(&checks);
        } else {
            assert_eq!(bad, vec!["frame.coordinates".to_string()]);
        }
    }
}

#[test]
fn horizontal_products() {
    let lb = point();
    let hor = &lb.inst.hor;
    let xi = hor.alg.gen("xi");
    let psi = hor.theta(0);
    let psis = hor.theta(1);
    assert_eq!(hor.mul(&psi, &xi), hor.alg.nf(&hor.mul(&xi, &psi).scale(&2.into())));
    let x = hor.alg.mul_all([&xi, &psi, &psis]);
    let xs = hor.star(&x);
    let want = hor.alg.mul_all([&hor.alg.gen("xi*"), &psi, &psis]).scale(&qfb_core::Scalar::from_ratio(-1, 4));
    assert_eq!(xs, hor.alg.nf(&want));
    assert!(hor.base_project(&hor.mul(&xi, &psi)).unwrap().is_zero());
}

#[test]
fn holomorphic_splitting() {
    let lb = point();
    let hor = &lb.inst.hor;
    let a = hor.mul(&hor.alg.gen("xi*"), &hor.theta(0));
    let b = hor.mul(&hor.alg.gen("xi"), &hor.theta(1));
    assert_eq!(holomorphic_split(&lb, &a).unwrap(), (a.clone(), NcPoly::zero()));
    assert_eq!(holomorphic_split(&lb, &b).unwrap(), (NcPoly::zero(), b.clone()));
    assert_eq!(holomorphic_split(&lb, &a.add(&b)).unwrap(), (a.clone(), b.clone()));
    assert!(holomorphic_split(&lb, &hor.mul(&hor.alg.gen("xi"), &hor.theta(0))).is_err());

    let lb = torus();
    let hor = &lb.inst.hor;
    let v = hor.alg.gen("v");
    let a = hor.mul(&hor.alg.gen("xi*"), &hor.theta(0));
    assert!(!hor.alg.nf(&hor.mul(&v, &a).sub(&hor.mul(&a, &v))).is_zero());
}

#[test]
fn excluded_lambda_rejected() {
    let err = LineSpec::point(Some("-1"), Some("1")).build().unwrap_err();
    assert!(err.to_string().contains("excluded parameter value"));
}

#[test]
fn definition_round_trips() {
    let lb = torus();
    let again = qfb_core::instance::Instance::from_json(&lb.inst.to_json()).unwrap();
    assert_eq!(again.nabla.images, lb.inst.nabla.images);
    let lb = LineSpec::quantum_torus(None, None, None).build().unwrap();
    let again = qfb_core::instance::Instance::from_json(&lb.inst.to_json()).unwrap();
    assert_eq!(again.nabla.images, lb.inst.nabla.images);
}
