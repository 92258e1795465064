use qfb_core::calculus::{connection_from_chi, Calculus};
use qfb_core::connection::{vertical_derivation, CovMap};
use qfb_core::linebundle::{LineBundle, LineSpec};
use qfb_core::ncalg::NcPoly;
use qfb_core::report::Check;
use qfb_core::torsion::{rho_defect, second_structure_hor, torsion, verify_delta, verify_form, verify_torsion};

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

fn torus(lambda: &str) -> LineBundle {
    LineSpec::quantum_torus(Some(lambda), Some("3/5+4/5 i"), Some("1")).build().unwrap()
}

fn calculus(lb: &LineBundle) -> Calculus {
    Calculus::build(&lb.inst, lb.inst.def.calculus.as_ref().unwrap()).unwrap()
}

fn torus_chi(lb: &LineBundle) -> CovMap {
    let hor = &lb.inst.hor;
    let lam = lb.tw.lambda.clone();
    let (xi, xis) = (hor.alg.gen("xi"), hor.alg.gen("xi*"));
    let chi_u = hor.mul(&xis, &hor.theta(0)).sub(&hor.mul(&xi, &hor.theta(1)).scale(&lam));
    let chi_us = hor.alg.mul_all([&xi, &chi_u, &xis]).neg();
    CovMap { degree: 1, values: vec![hor.alg.nf(&chi_u), hor.alg.nf(&chi_us)] }
}

#[test]
fn canonical_form_is_torsion_free() {
    for lb in [point(), torus("2")] {
        let inst = &lb.inst;
        let calc = calculus(&lb);
        assert_all(&verify_delta(&calc));
        let w = connection_from_chi(inst, &calc, &CovMap::zero(1, 2)).unwrap();
        let r = verify_form(inst, &calc, &w, &inst.samples(10, 6)).unwrap();
        assert_all(&r.checks);
        assert!(r.torsion.iter().all(NcPoly::is_zero));
        assert!(rho_defect(&calc, &w, &NcPoly::one()).unwrap().is_zero());
    }
}

#[test]
fn torus_torsion_at_lambda_one() {
    let lb = torus("1");
    let inst = &lb.inst;
    let hor = &inst.hor;
    let chi = torus_chi(&lb);
    let d = inst.nabla.add(&vertical_derivation(hor, &inst.pairs, &chi));
    let t = torsion(hor, &d);
    let (xi, xis) = (hor.alg.gen("xi"), hor.alg.gen("xi*"));
    let pp = hor.mul(&hor.theta(0), &hor.theta(1));
    assert_eq!(t[0], hor.alg.nf(&hor.mul(&xi, &pp).neg()));
    assert_eq!(t[1], hor.alg.nf(&hor.mul(&xis, &pp)));
    assert_eq!(hor.star(&t[0]), t[1]);
    assert_all(&verify_torsion(hor, &t));
    assert!(second_structure_hor(hor, &inst.pairs, &d).passed());

    let calc = calculus(&lb);
    let w = connection_from_chi(inst, &calc, &chi).unwrap();
    let r = verify_form(inst, &calc, &w, &inst.samples(10, 8)).unwrap();
    assert_all(&r.checks);
    assert_eq!(r.torsion, t);
}

#[test]
fn rescaled_vertical_part_keeps_zero_defect() {
    let lb = torus("1");
    let inst = &lb.inst;
    let hor = &inst.hor;
    let calc = calculus(&lb);
    let chi = torus_chi(&lb).scale(&2.into());
    // one-dimensional Γ_inv: ρ_ω(a) is a multiple of ω(ϑ)² = 4χ(u)², and χ(u)² = 0
    let chi_u = &chi.values[0];
    assert!(hor.mul(chi_u, chi_u).is_zero());
    let w = connection_from_chi(inst, &calc, &chi).unwrap();
    let g = &inst.hopf.alg;
    for n in 1..4 {
        assert!(rho_defect(&calc, &w, &g.pow(&g.gen("u"), n)).unwrap().is_zero());
    }
    let r = verify_form(inst, &calc, &w, &inst.samples(5, 9)).unwrap();
    assert_all(&r.checks);
}

#[test]
fn vertical_part_off_lambda_one_is_not_a_form() {
    let lb = torus("2");
    let calc = calculus(&lb);
    assert!(connection_from_chi(&lb.inst, &calc, &torus_chi(&lb)).is_err());
}
