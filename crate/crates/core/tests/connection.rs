use qfb_core::connection::{
    CovMap,
    connecting_identity, curvature_extract, regularity_space, vertical_derivation, verify_chi, verify_curvature,
    RegularityOptions,
};
use qfb_core::linebundle::{LineBundle, LineSpec};
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
fn curvature_identities() {
    for lb in [point(), torus()] {
        let inst = &lb.inst;
        let rho = curvature_extract(&inst.hor, &inst.pairs, &inst.nabla);
        let samples = inst.samples(20, 2);
        assert_all(&verify_curvature(&inst.hor, &inst.pairs, &inst.nabla, &rho, &samples, 3));
    }
}

#[test]
fn regularity_point() {
    let lb = point();
    let r = regularity_space(&lb.inst.hor, &lb.inst.pairs, RegularityOptions::new(3));
    println!("point: candidates {} linear {} real {}", r.candidates, r.linear_dim, r.real_dim);
    assert!(r.is_trivial());
    let mut opts = RegularityOptions::new(3);
    opts.sym12 = false;
    let r = regularity_space(&lb.inst.hor, &lb.inst.pairs, opts);
    println!("point without sym12: linear {} real {}", r.linear_dim, r.real_dim);
    assert!(!r.is_trivial());
    for chi in &r.basis {
        let checks = verify_chi(&lb.inst.hor, &lb.inst.pairs, chi, &lb.inst.samples(10, 4), 3);
        let kept: Vec<Check> = checks
            .into_iter()
            .filter(|c| ["chi.covariant", "chi.hermitian", "chi.antisymmetric"].contains(&c.name.as_str()))
            .collect();
        assert_eq!(kept.len(), 3);
        assert_all(&kept);
    }
}

#[test]
fn regularity_torus() {
    let lb = torus();
    let r = regularity_space(&lb.inst.hor, &lb.inst.pairs, RegularityOptions::new(3));
    println!("torus: candidates {} linear {} real {}", r.candidates, r.linear_dim, r.real_dim);
    assert!(r.is_trivial());
    let mut opts = RegularityOptions::new(3);
    opts.sym12 = false;
    let r = regularity_space(&lb.inst.hor, &lb.inst.pairs, opts);
    println!("torus without sym12: linear {} real {}", r.linear_dim, r.real_dim);
    assert!(!r.is_trivial());
}

fn torus_chi(lb: &LineBundle) -> CovMap {
    let hor = &lb.inst.hor;
    let lam = lb.tw.lambda.clone();
    let (xi, xis) = (hor.alg.gen("xi"), hor.alg.gen("xi*"));
    let chi_u = hor.mul(&xis, &hor.theta(0)).sub(&hor.mul(&xi, &hor.theta(1)).scale(&lam));
    let chi_us = hor.alg.mul_all([&xi, &chi_u, &xis]).neg();
    CovMap { degree: 1, values: vec![hor.alg.nf(&chi_u), hor.alg.nf(&chi_us)] }
}

fn status(checks: &[Check], name: &str) -> bool {
    checks.iter().find(|c| c.name == name).map(|c| c.passed()).expect(name)
}

#[test]
fn torus_vertical_map_at_lambda_one() {
    let lb = LineSpec::quantum_torus(Some("1"), Some("3/5+4/5 i"), Some("1")).build().unwrap();
    let inst = &lb.inst;
    let chi = torus_chi(&lb);
    let checks = verify_chi(&inst.hor, &inst.pairs, &chi, &inst.samples(10, 4), 3);
    for name in ["chi.covariant", "chi.hermitian", "chi.antisymmetric", "chi.reproduces"] {
        assert!(status(&checks, name), "{name}");
    }
    let module = checks.iter().find(|c| c.name == "chi.module").unwrap();
    assert_eq!(module.witness.as_deref(), Some("a = u, phi = v"));
    let d = inst.nabla.add(&vertical_derivation(&inst.hor, &inst.pairs, &chi));
    assert!(connecting_identity(&inst.hor, &inst.pairs, &d, &chi, 3).passed());
}

#[test]
fn torus_vertical_map_breaks_off_lambda_one() {
    let lb = torus();
    let inst = &lb.inst;
    let chi = torus_chi(&lb);
    let checks = verify_chi(&inst.hor, &inst.pairs, &chi, &inst.samples(10, 4), 3);
    assert!(status(&checks, "chi.covariant") && status(&checks, "chi.hermitian"));
    assert!(!status(&checks, "chi.reproduces") && !status(&checks, "chi.module"));
    let d = inst.nabla.add(&vertical_derivation(&inst.hor, &inst.pairs, &chi));
    assert!(connecting_identity(&inst.hor, &inst.pairs, &d, &chi, 3).failed());
}

#[test]
fn module_identity_leaves_nothing() {
    for lb in [point(), torus()] {
        let mut opts = RegularityOptions::new(3);
        opts.sym12 = false;
        opts.module_identity = true;
        assert!(regularity_space(&lb.inst.hor, &lb.inst.pairs, opts).is_trivial());
    }
}
