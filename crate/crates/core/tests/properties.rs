use proptest::prelude::*;
use qfb_core::calculus::Calculus;
use qfb_core::connection::verify_frame;
use qfb_core::homogeneous::torus_definition;
use qfb_core::instance::Instance;
use qfb_core::linebundle::LineSpec;
use qfb_core::ncalg::{Algebra, NcPoly};
use qfb_core::Scalar;

struct Fixture {
    inst: Instance,
    calc: Calculus,
}

thread_local! {
    static FIXTURES: Vec<Fixture> = {
        let defs = vec![
            LineSpec::point(Some("2"), Some("1")).definition().unwrap(),
            LineSpec::quantum_torus(Some("2"), Some("3/5+4/5 i"), Some("1")).definition().unwrap(),
            torus_definition(),
        ];
        defs.into_iter()
            .map(|d| {
                let inst = Instance::load(d).unwrap();
                let calc = Calculus::build(&inst, inst.def.calculus.as_ref().unwrap()).unwrap();
                Fixture { inst, calc }
            })
            .collect()
    };
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3, -2i64..=2).prop_map(|(n, d, im)| {
        &Scalar::from_ratio(n, d) + &(&Scalar::i() * &Scalar::from_int(im))
    })
}

/// Raw terms; generator indices are reduced modulo the algebra's generator count.
fn terms() -> impl Strategy<Value = Vec<(Vec<u32>, Scalar)>> {
    prop::collection::vec((prop::collection::vec(0u32..64, 0..=3), scalar()), 1..=3)
}

fn element(alg: &Algebra, terms: &[(Vec<u32>, Scalar)]) -> NcPoly {
    let n = alg.num_gens() as u32;
    let mut p = NcPoly::zero();
    for (w, c) in terms {
        p.add_term(w.iter().map(|g| g % n).collect(), c.clone());
    }
    p
}

/// A single word with a coefficient, hence homogeneous.
fn monomial(alg: &Algebra, w: &[u32], c: &Scalar) -> NcPoly {
    let n = alg.num_gens() as u32;
    NcPoly::term(w.iter().map(|g| g % n).collect(), c.clone())
}

fn each_hor(f: impl Fn(&Fixture, &Algebra) -> Result<(), TestCaseError>) -> Result<(), TestCaseError> {
    FIXTURES.with(|fx| fx.iter().try_for_each(|x| f(x, &x.inst.hor.alg)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
    }

    #[test]
    fn normal_form_is_canonical(t in terms()) {
        each_hor(|_, alg| {
            let x = element(alg, &t);
            let n = alg.nf(&x);
            prop_assert_eq!(alg.nf(&n), n.clone());
            prop_assert!(n.terms().all(|(w, _)| alg.is_normal(w)));
            Ok(())
        })?;
    }

    #[test]
    fn product_is_associative(a in terms(), b in terms(), c in terms()) {
        each_hor(|_, alg| {
            let (x, y, z) = (element(alg, &a), element(alg, &b), element(alg, &c));
            prop_assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
            Ok(())
        })?;
    }

    #[test]
    fn star_is_an_involution(t in terms()) {
        each_hor(|_, alg| {
            let x = element(alg, &t);
            prop_assert_eq!(alg.star(&alg.star(&x)), alg.nf(&x));
            Ok(())
        })?;
    }

    #[test]
    fn star_is_graded_antimultiplicative(u in prop::collection::vec(0u32..64, 0..=3), v in prop::collection::vec(0u32..64, 0..=3), a in scalar(), b in scalar()) {
        each_hor(|_, alg| {
            let (x, y) = (monomial(alg, &u, &a), monomial(alg, &v, &b));
            let sign = alg.degree(&x).unwrap_or(0) * alg.degree(&y).unwrap_or(0);
            let mut right = alg.mul(&alg.star(&y), &alg.star(&x));
            if sign % 2 != 0 {
                right = right.neg();
            }
            prop_assert_eq!(alg.star(&alg.mul(&x, &y)), right);
            Ok(())
        })?;
    }

    #[test]
    fn hopf_axioms_on_random_elements(t in terms()) {
        FIXTURES.with(|fx| fx.iter().try_for_each(|f| {
            let hopf = &f.inst.hopf;
            let x = element(&hopf.alg, &t);
            let bad: Vec<String> = hopf.verify(&[x], &[]).into_iter().filter(|c| c.failed()).map(|c| c.name).collect();
            prop_assert!(bad.is_empty(), "{:?}", bad);
            Ok(())
        }))?;
    }

    #[test]
    fn frame_is_hermitian_and_covariant(t in terms()) {
        each_hor(|f, alg| {
            let inst = &f.inst;
            let x = element(alg, &t);
            let checks = verify_frame(&inst.bundle, &inst.hor, &inst.nabla, inst.coords.as_ref(), &[x]);
            for c in checks.iter().filter(|c| c.name == "frame.hermitian" || c.name == "frame.covariant") {
                prop_assert!(c.passed(), "{} {:?}", c.name, c.witness);
            }
            Ok(())
        })?;
    }

    #[test]
    fn total_differential_squares_to_zero(t in terms()) {
        FIXTURES.with(|fx| fx.iter().try_for_each(|f| {
            let om = &f.calc.omega;
            let x = element(om, &t);
            prop_assert!(f.calc.d(&f.calc.d(&x)).is_zero());
            prop_assert_eq!(f.calc.d(&om.star(&x)), om.star(&f.calc.d(&x)));
            Ok(())
        }))?;
    }
}
