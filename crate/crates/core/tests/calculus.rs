use qfb_core::calculus::{connection_from_chi, verify_ideal, Annihilator, Calculus, Fodc};
use qfb_core::connection::{curvature_extract, CovMap};
use qfb_core::linebundle::{LineBundle, LineSpec};
use qfb_core::ncalg::NcPoly;
use qfb_core::report::Check;
use qfb_core::Scalar;

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

fn calculus(lb: &LineBundle) -> Calculus {
    Calculus::build(&lb.inst, lb.inst.def.calculus.as_ref().unwrap()).unwrap()
}

fn curvature_map(lb: &LineBundle) -> Annihilator<'_> {
    let inst = &lb.inst;
    let rho = curvature_extract(&inst.hor, &inst.pairs, &inst.nabla);
    Annihilator { name: "rho".into(), eval: Box::new(move |a: &NcPoly| rho.eval(&inst.hor, &inst.pairs, a)) }
}

#[test]
fn quotient_values() {
    let lb = point();
    let calc = calculus(&lb);
    let f = &calc.fodc;
    let g = &lb.inst.hopf.alg;
    let u = g.gen("u");
    let us = g.gen("u*");
    assert_eq!(f.pi(&g.pow(&u, 2)).unwrap(), vec![Scalar::from(5)]);
    assert_eq!(f.pi(&us).unwrap(), vec![Scalar::from_ratio(-1, 4)]);
    assert_eq!(f.circ(0, &u).unwrap(), vec![Scalar::from(4)]);
    assert_eq!(f.star(0).unwrap(), vec![Scalar::from(-1)]);
    assert_eq!(f.slice_dim(), 1);
}

#[test]
fn ideal_is_maximal_for_curvature() {
    for lb in [point(), torus()] {
        let calc = calculus(&lb);
        let checks = verify_ideal(&calc.fodc, &[curvature_map(&lb)], 4);
        assert_all(&checks);
    }
}

#[test]
fn classical_ideal_is_not_annihilated() {
    let lb = point();
    let g = &lb.inst.hopf.alg;
    let r = g.nf(&g.pow(&g.gen("u").sub(&NcPoly::one()), 2));
    let f = Fodc::new(&lb.inst.hopf, vec![r], vec!["vt".into()], vec![g.gen("u").sub(&NcPoly::one())], 4).unwrap();
    let checks = verify_ideal(&f, &[curvature_map(&lb)], 4);
    let failed: Vec<&str> = checks.iter().filter(|c| c.failed()).map(|c| c.name.as_str()).collect();
    assert_eq!(failed, vec!["calculus.ideal.annihilated", "calculus.ideal.maximal"]);
}

#[test]
fn total_calculus_checks() {
    for lb in [point(), torus()] {
        let calc = calculus(&lb);
        assert_all(&calc.verify(10, 3, 4));
    }
}

#[test]
fn form_commutes_past_total_generators() {
    let lb = point();
    let calc = calculus(&lb);
    let om = &calc.omega;
    let xi = om.gen("xi");
    let vt = calc.theta(0);
    assert_eq!(om.mul(&vt, &xi), om.nf(&om.mul(&xi, &vt).scale(&4.into())));
    assert_eq!(om.star(&vt), vt.neg());
}

#[test]
fn canonical_connection_form() {
    for lb in [point(), torus()] {
        let inst = &lb.inst;
        let calc = calculus(&lb);
        let zero = CovMap { degree: 1, values: vec![NcPoly::zero(); inst.hopf.alg.num_gens()] };
        let w = connection_from_chi(inst, &calc, &zero).unwrap();
        assert_all(&w.verify(&calc));
        for g in 0..inst.hor.alg.num_gens() as u32 {
            let x = NcPoly::gen(g);
            let d = w.covariant_derivative(inst, &calc, &x).unwrap();
            assert_eq!(d, calc.omega.nf(&inst.nabla.apply(&inst.hor.alg, &x)));
        }
    }
}
