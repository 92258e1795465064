use qfb_core::calculus::{connection_from_chi, Calculus};
use qfb_core::connection::{
    connecting_identity, curvature_extract, regularity_space, verify_chi, verify_frame, vertical_derivation, CovMap,
    RegularityOptions,
};
use qfb_core::homogeneous::{torus_definition, Homogeneous};
use qfb_core::instance::Instance;
use qfb_core::ncalg::{NcPoly, Tensor};
use qfb_core::report::Check;
use qfb_core::torsion::{second_structure_hor, torsion, verify_form};

fn assert_all(checks: &[Check]) {
    let bad: Vec<String> = checks
        .iter()
        .filter(|c| c.failed())
        .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()))
        .collect();
    assert!(bad.is_empty(), "failed checks:\n{}", bad.join("\n"));
}

fn torus() -> Instance {
    Instance::load(torus_definition()).unwrap()
}

#[test]
fn subgroup_data_checks() {
    let inst = torus();
    let calc = Calculus::build(&inst, inst.def.calculus.as_ref().unwrap()).unwrap();
    let h = Homogeneous::build(&inst).unwrap();
    let checks = h.verify(&inst, Some(&calc), 3);
    for c in &checks {
        println!("{} {:?}", c.name, c.status);
    }
    assert_all(&checks);
    assert!(checks.len() >= 18);
}

#[test]
fn restricted_adjoint_is_trivial() {
    let inst = torus();
    let h = Homogeneous::build(&inst).unwrap();
    let ba = &h.big.alg;
    for name in ["s", "t"] {
        let q = ba.gen(name);
        assert_eq!(h.restricted_adjoint(&inst, &q), Tensor::pure(&[&q, &NcPoly::one()]));
    }
}

#[test]
fn frame_from_subgroup() {
    let inst = torus();
    let h = Homogeneous::build(&inst).unwrap();
    let calc = Calculus::build(&inst, inst.def.calculus.as_ref().unwrap()).unwrap();
    let nabla = h.nabla(&inst, Some(&calc)).unwrap();
    assert_eq!(nabla.images, inst.nabla.images);
    let hor = &inst.hor;
    let st = hor.mul(&hor.alg.gen("s"), &hor.alg.gen("t"));
    assert_eq!(nabla.apply(&hor.alg, &st), hor.alg.nf(&hor.mul(&st, &hor.theta(0))));
    assert_all(&verify_frame(&inst.bundle, hor, &nabla, inst.coords.as_ref(), &inst.samples(20, 3)));
    let rho = curvature_extract(hor, &inst.pairs, &nabla);
    assert!(rho.is_zero());
    assert!(torsion(hor, &nabla).iter().all(NcPoly::is_zero));
}

#[test]
fn coordinate_elements_are_solved() {
    let mut def = torus_definition();
    def.homogeneous.as_mut().unwrap().coordinate_elements.clear();
    let inst = Instance::load(def).unwrap();
    let h = Homogeneous::build(&inst).unwrap();
    let c = h.coordinate_elements(&inst, 3).unwrap();
    let ba = &h.big.alg;
    assert_eq!(c, vec![ba.gen("t").sub(&NcPoly::one())]);
}

#[test]
fn unit_coordinates_fail() {
    let mut def = torus_definition();
    let coords = def.frame.coordinates.as_mut().unwrap();
    coords.b = vec![vec!["1".into()]];
    coords.f = vec!["t - 1".into()];
    let inst = Instance::load(def).unwrap();
    let h = Homogeneous::build(&inst).unwrap();
    let checks = h.verify(&inst, None, 3);
    assert!(checks.iter().any(|c| c.name == "homogeneous.coordinates" && c.failed()));
    let frame = verify_frame(&inst.bundle, &inst.hor, &inst.nabla, inst.coords.as_ref(), &[]);
    assert!(frame.iter().any(|c| c.name == "frame.coordinates" && c.failed()));
}

#[test]
fn total_calculus_and_form() {
    let inst = torus();
    let calc = Calculus::build(&inst, inst.def.calculus.as_ref().unwrap()).unwrap();
    assert_all(&calc.verify(10, 4, 4));
    let w = connection_from_chi(&inst, &calc, &CovMap::zero(1, 2)).unwrap();
    let r = verify_form(&inst, &calc, &w, &inst.samples(10, 5)).unwrap();
    assert_all(&r.checks);
}

#[test]
fn regularity_space_of_the_torus() {
    let inst = torus();
    let hor = &inst.hor;
    let r = regularity_space(hor, &inst.pairs, RegularityOptions::new(2));
    assert_eq!(r.real_dim, 5);
    let calc = Calculus::build(&inst, inst.def.calculus.as_ref().unwrap()).unwrap();
    for chi in &r.basis {
        assert_all(&verify_chi(hor, &inst.pairs, chi, &inst.samples(10, 2), 3));
        let d = inst.nabla.add(&vertical_derivation(hor, &inst.pairs, chi));
        assert!(connecting_identity(hor, &inst.pairs, &d, chi, 3).passed());
        assert!(second_structure_hor(hor, &inst.pairs, &d).passed());
        let w = connection_from_chi(&inst, &calc, chi).unwrap();
        assert_all(&verify_form(&inst, &calc, &w, &inst.samples(5, 3)).unwrap().checks);
    }
}
