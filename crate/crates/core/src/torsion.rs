//! Torsion, the multiplicativity defect `ρ_ω`, the curvature form `R_ω` and
//! the structure equations.

use crate::calculus::{Calculus, ConnectionForm};
use crate::connection::{curvature_extract, DualPairs};
use crate::error::Result;
use crate::horizontal::Hor;
use crate::instance::Instance;
use crate::ncalg::{Derivation, NcPoly, Tensor, Word};
use crate::report::Check;

/// `T^i = D(θ_i)`.
pub fn torsion(hor: &Hor, d: &Derivation) -> Vec<NcPoly> {
    (0..hor.nv()).map(|i| d.apply(&hor.alg, &hor.theta(i))).collect()
}

/// A map on `𝕍` given by its values on the `θ_i`, applied linearly.
fn on_v(hor: &Hor, t: &[NcPoly], x: &NcPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    for (v, b) in hor.components(x) {
        if let [g] = v.as_slice() {
            out.add_assign(&hor.mul(&b, &t[*g as usize]));
        }
    }
    hor.alg.nf(&out)
}

/// Covariance `F^∧T^i = Σ_j T^j⊗u_ji` and hermiticity `T(θ*) = T(θ)*`.
pub fn verify_torsion(hor: &Hor, t: &[NcPoly]) -> Vec<Check> {
    let algs = [&hor.alg, &hor.hopf.alg];
    let mut wc = Vec::new();
    let mut wh = Vec::new();
    for i in 0..hor.nv() {
        let th = hor.theta(i);
        let mut want = Tensor::zero();
        for (s, c) in hor.f_wedge(&th).terms() {
            let tj = on_v(hor, t, &NcPoly::word(s[0].clone()));
            want.add_assign(&Tensor::pure(&[&tj, &NcPoly::word(s[1].clone())]).scale(c));
        }
        if !hor.f_wedge(&t[i]).sub(&want).nf(&algs).is_zero() {
            wc.push(hor.alg.fmt(&th));
        }
        let lhs = on_v(hor, t, &hor.star(&th));
        if !hor.alg.nf(&lhs.sub(&hor.star(&t[i]))).is_zero() {
            wh.push(hor.alg.fmt(&th));
        }
    }
    vec![
        Check::from_witnesses("torsion.covariant", "F^ T(theta_i) = sum_j T(theta_j) (x) u_ji", wc),
        Check::from_witnesses("torsion.hermitian", "T(theta*) = T(theta)*", wh),
    ]
}

/// Structure equation for a covariant `D` on `hor_P` with vanishing defect:
/// `D(T^i) = −Σ_j θ_j ϱ_D(u_ji)`.
pub fn second_structure_hor(hor: &Hor, pairs: &DualPairs, d: &Derivation) -> Check {
    let t = torsion(hor, d);
    let rho = curvature_extract(hor, pairs, d);
    let mut w = Vec::new();
    for i in 0..hor.nv() {
        let mut s = d.apply(&hor.alg, &t[i]);
        for (sl, c) in hor.f_wedge(&hor.theta(i)).terms() {
            let r = rho.eval_word(hor, pairs, &sl[1]);
            s.add_assign(&hor.mul(&NcPoly::word(sl[0].clone()), &r).scale(c));
        }
        if !hor.alg.nf(&s).is_zero() {
            w.push(format!("{}: {}", hor.alg.fmt(&hor.theta(i)), hor.alg.fmt(&hor.alg.nf(&s))));
        }
    }
    Check::from_witnesses("torsion.second_structure", "D T^i = -sum_j theta_j rho(u_ji)", w)
}

/// `ω` applied to a word in the `ϑ` basis of `Γ_inv^∧` (single letters only).
fn omega_word(form: &ConnectionForm, w: &Word) -> NcPoly {
    match w.as_slice() {
        [g] => form.values[*g as usize].clone(),
        _ => NcPoly::zero(),
    }
}

/// `⟨ω,ω⟩(ϑ_a) = Σ ω(ϑ¹)ω(ϑ²)` over `δ(ϑ_a)`.
pub fn bracket_basis(calc: &Calculus, form: &ConnectionForm, a: usize) -> NcPoly {
    let mut out = NcPoly::zero();
    for (s, c) in calc.delta[a].terms() {
        let x = omega_word(form, &s[0]);
        let y = omega_word(form, &s[1]);
        out.add_assign(&calc.omega.mul(&x, &y).scale(c));
    }
    calc.omega.nf(&out)
}

/// `⟨ω,ω⟩π(a)`.
pub fn bracket(calc: &Calculus, form: &ConnectionForm, a: &NcPoly) -> Result<NcPoly> {
    let mut out = NcPoly::zero();
    for (k, c) in calc.fodc.pi(a)?.iter().enumerate() {
        if !c.is_zero() {
            out.add_assign(&bracket_basis(calc, form, k).scale(c));
        }
    }
    Ok(calc.omega.nf(&out))
}

/// `ρ_ω(a) = ⟨ω,ω⟩π(a) + ωπ(a⁽¹⁾)ωπ(a⁽²⁾)`.
pub fn rho_defect(calc: &Calculus, form: &ConnectionForm, a: &NcPoly) -> Result<NcPoly> {
    let mut out = bracket(calc, form, a)?;
    for (s, c) in calc.fodc.hopf.phi(a).terms() {
        let x = form.apply(calc, &calc.pi(&NcPoly::word(s[0].clone()))?);
        let y = form.apply(calc, &calc.pi(&NcPoly::word(s[1].clone()))?);
        out.add_assign(&calc.omega.mul(&x, &y).scale(c));
    }
    Ok(calc.omega.nf(&out))
}

/// `R_ω π(a) = dωπ(a) − ⟨ω,ω⟩π(a)`.
pub fn curvature_form(calc: &Calculus, form: &ConnectionForm, a: &NcPoly) -> Result<NcPoly> {
    let w = form.apply(calc, &calc.pi(a)?);
    Ok(calc.omega.nf(&calc.d(&w).sub(&bracket(calc, form, a)?)))
}

/// The embedded differential: legs multiply to `d^∧`, hermitian for the
/// flip star `(x⊗y)* = (−1)^{∂x∂y}y*⊗x*`, intertwines `ϖ`, and is declared on
/// a basis of `Γ_inv` that is independent modulo `ℛ`.
pub fn verify_delta(calc: &Calculus) -> Vec<Check> {
    let wa = &calc.wedge;
    let algs = [wa, wa];
    let n = calc.fodc.dim();
    let gen = |k: usize| NcPoly::gen(k as u32);
    let delta_of = |x: &NcPoly| -> Tensor {
        let mut t = Tensor::zero();
        for (w, c) in x.terms() {
            if let [g] = w.as_slice() {
                t.add_assign(&calc.delta[*g as usize].scale(c));
            }
        }
        t.nf(&algs)
    };
    let flip_star = |t: &Tensor| -> Tensor {
        let mut out = Tensor::zero();
        for (s, c) in t.terms() {
            let x = wa.star(&NcPoly::word(s[0].clone()));
            let y = wa.star(&NcPoly::word(s[1].clone()));
            let odd = wa.word_degree(&s[0]) * wa.word_degree(&s[1]) % 2 != 0;
            let c = if odd { -&c.conj() } else { c.conj() };
            out.add_assign(&Tensor::pure(&[&y, &x]).scale(&c));
        }
        out.nf(&algs)
    };
    let mut wl = Vec::new();
    let mut wh = Vec::new();
    let mut wi = Vec::new();
    for a in 0..n {
        let name = &calc.fodc.names[a];
        let mut prod = NcPoly::zero();
        for (s, c) in calc.delta[a].terms() {
            prod.add_assign(&wa.mul(&NcPoly::word(s[0].clone()), &NcPoly::word(s[1].clone())).scale(c));
        }
        if !wa.nf(&prod.sub(&calc.d_wedge[a])).is_zero() {
            wl.push(name.clone());
        }
        if !delta_of(&wa.star(&gen(a))).sub(&flip_star(&calc.delta[a])).nf(&algs).is_zero() {
            wh.push(name.clone());
        }
        match (0..n).map(|k| calc.fodc.varpi(k)).collect::<Result<Vec<_>>>() {
            Ok(vp) => {
                // (δ⊗id)ϖ(ϑ_a) against ϖ⊗ϖ applied to δ(ϑ_a)
                let ga = &calc.fodc.hopf.alg;
                let algs3 = [wa, wa, ga];
                let mut lhs = Tensor::zero();
                for (b, c) in vp[a].iter().enumerate() {
                    for (s, x) in calc.delta[b].terms() {
                        lhs.add_assign(&Tensor::pure(&[&NcPoly::word(s[0].clone()), &NcPoly::word(s[1].clone()), c]).scale(x));
                    }
                }
                let mut rhs = Tensor::zero();
                for (s, x) in calc.delta[a].terms() {
                    if let ([p], [q]) = (s[0].as_slice(), s[1].as_slice()) {
                        for (b1, c1) in vp[*p as usize].iter().enumerate() {
                            for (b2, c2) in vp[*q as usize].iter().enumerate() {
                                let cc = ga.mul(c1, c2);
                                rhs.add_assign(&Tensor::pure(&[&gen(b1), &gen(b2), &cc]).scale(x));
                            }
                        }
                    }
                }
                if !lhs.sub(&rhs).nf(&algs3).is_zero() {
                    wi.push(name.clone());
                }
            }
            Err(e) => wi.push(e.to_string()),
        }
    }
    let dim = calc.fodc.slice_dim();
    let wd = if dim == n { Vec::new() } else { vec![format!("quotient dimension {dim}, basis {n}")] };
    vec![
        Check::from_witnesses("delta.legs", "sum_k t_k^1 t_k^2 = d^(t)", wl),
        Check::from_witnesses("delta.hermitian", "delta(t*) = delta(t)*", wh),
        Check::from_witnesses("delta.adjoint", "(delta (x) id) varpi = varpi^(2) delta", wi),
        Check::from_witnesses("delta.well_defined", "basis of Gamma_inv independent modulo R", wd),
    ]
}

/// Torsion, defect, curvature and the structure equation for `ω`.
pub struct FormReport {
    pub torsion: Vec<NcPoly>,
    pub checks: Vec<Check>,
}

/// `D_ω T^i = −Σ_j θ_j R^{ji} − Σ_j T^j ρ_ω(u_ji)` in `Ω(P)`, together with
/// `R_{ω} = ϱ_D` and `D_ω = ∇ + E_χ` when `ω` is regular.
pub fn verify_form(inst: &Instance, calc: &Calculus, form: &ConnectionForm, samples: &[NcPoly]) -> Result<FormReport> {
    let hor = &inst.hor;
    let om = &calc.omega;
    let ga = &inst.hopf.alg;
    let gens: Vec<NcPoly> = (0..ga.num_gens() as u32).map(NcPoly::gen).collect();
    let e = crate::connection::vertical_derivation(hor, &inst.pairs, &form.chi);
    let d = inst.nabla.add(&e);
    let rho_d = curvature_extract(hor, &inst.pairs, &d);

    let t: Vec<NcPoly> =
        (0..hor.nv()).map(|i| form.covariant_derivative(inst, calc, &hor.theta(i))).collect::<Result<_>>()?;
    let mut checks = verify_torsion(hor, &t);

    let mut wd = Vec::new();
    let mut defect = Vec::new();
    for g in &gens {
        let r = rho_defect(calc, form, g)?;
        if !r.is_zero() {
            wd.push(format!("{}: {}", ga.fmt(g), om.fmt(&r)));
        }
        defect.push(r);
    }
    if !rho_defect(calc, form, &NcPoly::one())?.is_zero() {
        wd.push("1".into());
    }
    checks.push(
        Check::from_witnesses("form.defect", "rho_w(a) = <w,w>pi(a) + w pi(a(1)) w pi(a(2)) = 0", wd)
            .with_detail("required for regular forms"),
    );

    let mut wr = Vec::new();
    for word in crate::connection::group_words(hor, 2) {
        let a = NcPoly::word(word.clone());
        let lhs = curvature_form(calc, form, &a)?;
        let rhs = rho_d.eval_word(hor, &inst.pairs, &word);
        if !om.nf(&lhs.sub(&rhs)).is_zero() {
            wr.push(ga.fmt(&a));
        }
    }
    checks.push(Check::from_witnesses("form.curvature", "R_w pi(a) = d w pi(a) - <w,w> pi(a) = rho_D(a)", wr));

    let mut wc = Vec::new();
    for x in samples {
        let lhs = form.covariant_derivative(inst, calc, x)?;
        if !om.nf(&lhs.sub(&d.apply(&hor.alg, x))).is_zero() {
            wc.push(hor.alg.fmt(x));
        }
    }
    checks.push(Check::from_witnesses("form.covariant_derivative", "d phi - (-1)^k sum phi_k w pi(c_k) = (nabla + E) phi", wc));

    let mut ws = Vec::new();
    for i in 0..hor.nv() {
        let mut s = form.covariant_derivative(inst, calc, &t[i])?;
        for (sl, c) in hor.f_wedge(&hor.theta(i)).terms() {
            let theta = NcPoly::word(sl[0].clone());
            let u = NcPoly::word(sl[1].clone());
            let r = curvature_form(calc, form, &u)?;
            s.add_assign(&om.mul(&theta, &r).scale(c));
            let tj = on_v(hor, &t, &theta);
            s.add_assign(&om.mul(&tj, &rho_defect(calc, form, &u)?).scale(c));
        }
        let s = om.nf(&s);
        if !s.is_zero() {
            ws.push(format!("{}: {}", hor.alg.fmt(&hor.theta(i)), om.fmt(&s)));
        }
    }
    checks.push(Check::from_witnesses(
        "form.second_structure",
        "D_w T^i = -sum_j theta_j R^ji - sum_j T^j rho_w(u_ji)",
        ws,
    ));
    Ok(FormReport { torsion: t, checks })
}
