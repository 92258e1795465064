//! Presented Hopf *-algebras: coproduct, counit, antipode, corepresentations,
//! adjoint action and a tabulated Haar functional.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ncalg::{Algebra, GenMap, Generator, NcPoly, Rule, Tensor, Word};
use crate::report::Check;
use crate::scalar::Scalar;

/// A matrix corepresentation `φ(u_ij) = Σ_k u_ik ⊗ u_kj`.
#[derive(Clone, Debug)]
pub struct Corep {
    pub name: String,
    pub entries: Vec<Vec<NcPoly>>,
    pub unitary: bool,
}

impl Corep {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &NcPoly {
        &self.entries[i][j]
    }
}

/// Haar functional given on normal words, with an optional default value.
#[derive(Clone, Debug)]
pub struct Haar {
    pub values: BTreeMap<Word, Scalar>,
    pub default: Option<Scalar>,
}

impl Haar {
    pub fn eval_word(&self, alg: &Algebra, w: &Word) -> Result<Scalar> {
        match (self.values.get(w), &self.default) {
            (Some(v), _) => Ok(v.clone()),
            (None, Some(d)) => Ok(d.clone()),
            (None, None) => Err(Error::HaarUndefined(alg.word_to_string(w))),
        }
    }

    pub fn eval(&self, alg: &Algebra, p: &NcPoly) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (w, c) in p.terms() {
            acc = &acc + &(c * &self.eval_word(alg, w)?);
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug)]
pub struct Hopf {
    pub alg: Algebra,
    pub coproduct: GenMap,
    pub counit: GenMap,
    pub antipode: GenMap,
    pub antipode_inv: Option<GenMap>,
    pub haar: Haar,
    pub coreps: Vec<Corep>,
}

/// The commutative torus `T^k` with grouplike unitaries named `names`.
/// Generators come in pairs `x, x*`; characters are `1` on every generator.
pub fn torus(name: &str, names: &[&str]) -> Hopf {
    let k = names.len();
    let mut gens = Vec::new();
    for (i, n) in names.iter().enumerate() {
        let g = 2 * i as u32;
        gens.push(Generator { name: (*n).to_string(), degree: 0, star: Some(NcPoly::gen(g + 1)) });
        gens.push(Generator { name: format!("{n}*"), degree: 0, star: Some(NcPoly::gen(g)) });
    }
    let mut rules = Vec::new();
    for i in 0..k as u32 {
        rules.push(Rule { lhs: vec![2 * i, 2 * i + 1], rhs: NcPoly::one() });
        rules.push(Rule { lhs: vec![2 * i + 1, 2 * i], rhs: NcPoly::one() });
    }
    for b in 0..2 * k as u32 {
        for a in 0..b {
            if a / 2 != b / 2 {
                rules.push(Rule { lhs: vec![b, a], rhs: NcPoly::word(vec![a, b]) });
            }
        }
    }
    let alg = Algebra::new(name, gens, rules).expect("torus presentation");
    let n = 2 * k as u32;
    let coproduct = GenMap::new((0..n).map(|g| Tensor::term(vec![vec![g], vec![g]], Scalar::one())).collect());
    let counit = GenMap::new((0..n).map(|_| Tensor::unit(0)).collect());
    let partner = |g: u32| g ^ 1;
    let antipode = GenMap::anti((0..n).map(|g| Tensor::term(vec![vec![partner(g)]], Scalar::one())).collect());
    let coreps = (0..n)
        .map(|g| Corep { name: alg.gen_name(g).to_string(), entries: vec![vec![NcPoly::gen(g)]], unitary: true })
        .collect();
    let haar = Haar { values: [(Vec::new(), Scalar::one())].into_iter().collect(), default: Some(Scalar::zero()) };
    Hopf { alg, coproduct, counit, antipode: antipode.clone(), antipode_inv: Some(antipode), haar, coreps }
}

/// `U(1)` with generators `u, u*`.
pub fn u1() -> Hopf {
    torus("U(1)", &["u"])
}

impl Hopf {
    fn a2(&self) -> [&Algebra; 2] {
        [&self.alg, &self.alg]
    }

    pub fn eps(&self, p: &NcPoly) -> Scalar {
        self.counit.apply(p, &[]).to_scalar()
    }

    pub fn eps_word(&self, w: &[u32]) -> Scalar {
        self.counit.apply_word(w, &[]).to_scalar()
    }

    pub fn phi(&self, p: &NcPoly) -> Tensor {
        self.coproduct.apply(p, &self.a2())
    }

    pub fn kappa(&self, p: &NcPoly) -> NcPoly {
        self.antipode.apply(p, &[&self.alg]).to_poly()
    }

    pub fn kappa_inv(&self, p: &NcPoly) -> Option<NcPoly> {
        self.antipode_inv.as_ref().map(|m| m.apply(p, &[&self.alg]).to_poly())
    }

    pub fn star(&self, p: &NcPoly) -> NcPoly {
        self.alg.star(p)
    }

    pub fn haar(&self, p: &NcPoly) -> Result<Scalar> {
        self.haar.eval(&self.alg, p)
    }

    /// Iterated coproduct into `k` slots.
    pub fn sweedler(&self, p: &NcPoly, k: usize) -> Tensor {
        assert!(k >= 1);
        let mut t = Tensor::zero();
        for (w, c) in p.terms() {
            t.add_term(vec![w.clone()], c.clone());
        }
        for _ in 1..k {
            let mut next = Tensor::zero();
            for (slots, c) in t.terms() {
                let (head, last) = slots.split_at(slots.len() - 1);
                let img = self.coproduct.apply_word(&last[0], &self.a2());
                for (s2, c2) in img.terms() {
                    let mut ns = head.to_vec();
                    ns.extend(s2.iter().cloned());
                    next.add_term(ns, c * c2);
                }
            }
            t = next;
        }
        t
    }

    /// `ad(a) = a⁽²⁾ ⊗ κ(a⁽¹⁾)a⁽³⁾`.
    pub fn ad(&self, p: &NcPoly) -> Tensor {
        let mut out = Tensor::zero();
        for (s, c) in self.sweedler(p, 3).terms() {
            let right = self.alg.mul(&self.kappa(&NcPoly::word(s[0].clone())), &NcPoly::word(s[2].clone()));
            for (w, d) in right.terms() {
                out.add_term(vec![s[1].clone(), w.clone()], c * d);
            }
        }
        out
    }

    /// Checks every Hopf *-algebra axiom on generators and on `samples`.
    pub fn verify(&self, samples: &[NcPoly], haar_span: &[NcPoly]) -> Vec<Check> {
        let alg = &self.alg;
        let a2 = self.a2();
        let gens: Vec<NcPoly> = (0..alg.num_gens() as u32).map(NcPoly::gen).collect();
        let mut elems = gens.clone();
        elems.extend(samples.iter().map(|s| alg.nf(s)));
        let mut checks = Vec::new();

        let res = self.coproduct.relation_residues(alg, &a2);
        checks.push(Check::from_witnesses(
            "hopf.coproduct.homomorphism",
            "phi(ab) = phi(a)phi(b) on defining relations",
            res.into_iter().map(|(r, d)| format!("{r}: {d}")).collect(),
        ));
        let res = self.counit.relation_residues(alg, &[]);
        checks.push(Check::from_witnesses(
            "hopf.counit.character",
            "eps(ab) = eps(a)eps(b) on defining relations",
            res.into_iter().map(|(r, d)| format!("{r}: {d}")).collect(),
        ));
        let res = self.antipode.relation_residues(alg, &[alg]);
        checks.push(Check::from_witnesses(
            "hopf.antipode.antihomomorphism",
            "kappa(ab) = kappa(b)kappa(a) on defining relations",
            res.into_iter().map(|(r, d)| format!("{r}: {d}")).collect(),
        ));

        let mut w_coassoc = Vec::new();
        let mut w_counit = Vec::new();
        let mut w_antipode = Vec::new();
        let mut w_star = Vec::new();
        for a in &elems {
            let s3 = self.sweedler(a, 3);
            let mut alt = Tensor::zero();
            for (s, c) in self.phi(a).terms() {
                for (s2, c2) in self.coproduct.apply_word(&s[0], &a2).terms() {
                    alt.add_term(vec![s2[0].clone(), s2[1].clone(), s[1].clone()], c * c2);
                }
            }
            if !s3.sub(&alt).is_zero() {
                w_coassoc.push(alg.fmt(a));
            }
            let t = self.phi(a);
            let left = alg.nf(&t.contract_slot(0, |w| self.eps_word(w)).to_poly());
            let right = alg.nf(&t.contract_slot(1, |w| self.eps_word(w)).to_poly());
            if !left.sub(a).is_zero() || !right.sub(a).is_zero() {
                w_counit.push(alg.fmt(a));
            }
            let e1 = NcPoly::scalar(self.eps(a));
            let mut l = NcPoly::zero();
            let mut r = NcPoly::zero();
            for (s, c) in t.terms() {
                let x = NcPoly::word(s[0].clone());
                let y = NcPoly::word(s[1].clone());
                l.add_assign(&alg.mul(&self.kappa(&x), &y).scale(c));
                r.add_assign(&alg.mul(&x, &self.kappa(&y)).scale(c));
            }
            if !l.sub(&e1).is_zero() || !r.sub(&e1).is_zero() {
                w_antipode.push(alg.fmt(a));
            }
            // φ(a*) = (*⊗*)φ(a)
            let lhs = self.phi(&self.star(a));
            let mut rhs = Tensor::zero();
            for (s, c) in t.terms() {
                let x = self.star(&NcPoly::word(s[0].clone()));
                let y = self.star(&NcPoly::word(s[1].clone()));
                rhs.add_assign(&Tensor::pure(&[&x, &y]).scale(&c.conj()));
            }
            let eps_star = &self.eps(&self.star(a)) - &self.eps(a).conj();
            if !lhs.sub(&rhs).is_zero() || !eps_star.is_zero() {
                w_star.push(alg.fmt(a));
            }
        }
        checks.push(Check::from_witnesses(
            "hopf.coproduct.coassociative",
            "(phi (x) id)phi = (id (x) phi)phi",
            w_coassoc,
        ));
        checks.push(Check::from_witnesses(
            "hopf.counit.law",
            "(eps (x) id)phi = id = (id (x) eps)phi",
            w_counit,
        ));
        checks.push(Check::from_witnesses(
            "hopf.antipode.law",
            "m(kappa (x) id)phi = eps(.)1 = m(id (x) kappa)phi",
            w_antipode,
        ));
        checks.push(Check::from_witnesses(
            "hopf.star.compatible",
            "phi(a*) = (* (x) *)phi(a), eps(a*) = conj eps(a)",
            w_star,
        ));

        let mut w = Vec::new();
        for g in &gens {
            let back = self.star(&self.kappa(&self.star(&self.kappa(g))));
            if !back.sub(g).is_zero() {
                w.push(alg.fmt(g));
            }
        }
        checks.push(Check::from_witnesses("hopf.antipode.star", "kappa(kappa(a)*)* = a", w));

        if self.antipode_inv.is_some() {
            let mut w = Vec::new();
            for g in &gens {
                let k = self.kappa(g);
                let back = self.kappa_inv(&k).expect("inverse antipode");
                if !back.sub(g).is_zero() {
                    w.push(alg.fmt(g));
                }
            }
            checks.push(Check::from_witnesses("hopf.antipode.inverse", "kappa^-1 kappa = id", w));
        }

        checks.extend(self.verify_haar(haar_span));
        for r in &self.coreps {
            checks.extend(self.verify_corep(r));
        }
        checks
    }

    pub fn verify_haar(&self, span: &[NcPoly]) -> Vec<Check> {
        let alg = &self.alg;
        let mut checks = Vec::new();
        let anchor = "h(1) = 1";
        match self.haar(&NcPoly::one()) {
            Ok(v) if v.is_one() => checks.push(Check::pass("hopf.haar.normalized", anchor)),
            Ok(v) => checks.push(Check::fail("hopf.haar.normalized", anchor, format!("h(1) = {v}"))),
            Err(e) => checks.push(Check::fail("hopf.haar.normalized", anchor, e.to_string())),
        }
        let mut w_inv = Vec::new();
        let mut w_kappa = Vec::new();
        for a in span {
            let t = self.phi(a);
            let res = (|| -> Result<bool> {
                let h = self.haar(a)?;
                let mut left = NcPoly::zero();
                let mut right = NcPoly::zero();
                for (s, c) in t.terms() {
                    left.add_assign(&NcPoly::word(s[0].clone()).scale(&(c * &self.haar.eval_word(alg, &s[1])?)));
                    right.add_assign(&NcPoly::word(s[1].clone()).scale(&(c * &self.haar.eval_word(alg, &s[0])?)));
                }
                let one = NcPoly::scalar(h);
                Ok(alg.nf(&left).sub(&one).is_zero() && alg.nf(&right).sub(&one).is_zero())
            })();
            match res {
                Ok(true) => {}
                Ok(false) => w_inv.push(alg.fmt(a)),
                Err(e) => w_inv.push(format!("{}: {e}", alg.fmt(a))),
            }
            match (self.haar(&self.kappa(a)), self.haar(a)) {
                (Ok(x), Ok(y)) if x == y => {}
                _ => w_kappa.push(alg.fmt(a)),
            }
        }
        checks.push(Check::from_witnesses(
            "hopf.haar.invariant",
            "(id (x) h)phi(a) = h(a)1 = (h (x) id)phi(a)",
            w_inv,
        ));
        checks.push(Check::from_witnesses("hopf.haar.antipode", "h(kappa(a)) = h(a)", w_kappa));
        checks
    }

    pub fn verify_corep(&self, r: &Corep) -> Vec<Check> {
        let alg = &self.alg;
        let n = r.dim();
        let mut w_co = Vec::new();
        let mut w_eps = Vec::new();
        let mut w_unit = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.phi(r.entry(i, j));
                let mut rhs = Tensor::zero();
                for k in 0..n {
                    rhs.add_assign(&Tensor::pure(&[r.entry(i, k), r.entry(k, j)]));
                }
                if !lhs.sub(&rhs).is_zero() {
                    w_co.push(format!("{}[{},{}]", r.name, i + 1, j + 1));
                }
                let e = self.eps(r.entry(i, j));
                let expect = if i == j { Scalar::one() } else { Scalar::zero() };
                if e != expect {
                    w_eps.push(format!("{}[{},{}]", r.name, i + 1, j + 1));
                }
                if r.unitary {
                    let delta = NcPoly::scalar(expect);
                    let mut a = NcPoly::zero();
                    let mut b = NcPoly::zero();
                    for k in 0..n {
                        a.add_assign(&alg.mul(&self.star(r.entry(k, i)), r.entry(k, j)));
                        b.add_assign(&alg.mul(r.entry(i, k), &self.star(r.entry(j, k))));
                    }
                    if !a.sub(&delta).is_zero() || !b.sub(&delta).is_zero() {
                        w_unit.push(format!("{}[{},{}]", r.name, i + 1, j + 1));
                    }
                }
            }
        }
        let mut checks = vec![
            Check::from_witnesses(
                format!("hopf.corep.{}.coaction", r.name),
                "phi(u_ij) = sum_k u_ik (x) u_kj",
                w_co,
            ),
            Check::from_witnesses(format!("hopf.corep.{}.counit", r.name), "eps(u_ij) = delta_ij", w_eps),
        ];
        if r.unitary {
            checks.push(Check::from_witnesses(
                format!("hopf.corep.{}.unitary", r.name),
                "sum_k u_ki* u_kj = delta_ij = sum_k u_ik u_jk*",
                w_unit,
            ));
        }
        checks
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(checks: &[Check]) {
        for c in checks {
            assert!(c.passed(), "{} failed: {:?}", c.name, c.witness);
        }
    }

    #[test]
    fn u1_axioms() {
        let h = u1();
        let samples = vec![h.alg.nf(&NcPoly::word(vec![0, 0])).add(&NcPoly::gen(1))];
        let span: Vec<NcPoly> = h.alg.normal_words(2).into_iter().map(NcPoly::word).collect();
        all_pass(&h.verify(&samples, &span));
        for r in &h.coreps {
            all_pass(&h.verify_corep(r));
        }
    }

    #[test]
    fn torus2_axioms() {
        let h = torus("T2", &["s", "t"]);
        let span: Vec<NcPoly> = h.alg.normal_words(2).into_iter().map(NcPoly::word).collect();
        all_pass(&h.verify(&[NcPoly::word(vec![3, 0])], &span));
        assert_eq!(h.alg.fmt(&h.alg.nf(&NcPoly::word(vec![2, 0, 3]))), "s");
    }

    #[test]
    fn broken_antipode_is_caught() {
        let mut h = u1();
        h.antipode = GenMap::anti(vec![
            Tensor::term(vec![vec![0]], Scalar::one()),
            Tensor::term(vec![vec![1]], Scalar::one()),
        ]);
        let checks = h.verify(&[], &[]);
        let law = checks.iter().find(|c| c.name == "hopf.antipode.law").unwrap();
        assert!(law.failed());
        assert_eq!(law.witness.as_deref().map(|w| w.starts_with('u')), Some(true));
    }

    #[test]
    fn sweedler_and_adjoint() {
        let h = u1();
        let u = NcPoly::gen(0);
        assert_eq!(h.sweedler(&u, 2), Tensor::term(vec![vec![0], vec![0]], Scalar::one()));
        let u2 = NcPoly::word(vec![0, 0]);
        assert_eq!(h.sweedler(&u2, 3), Tensor::term(vec![vec![0, 0]; 3], Scalar::one()));
        assert_eq!(h.ad(&u), Tensor::term(vec![vec![0], vec![]], Scalar::one()));
        assert_eq!(h.ad(&NcPoly::one()), Tensor::unit(2));
        assert_eq!(h.eps(&u2), Scalar::one());
        assert_eq!(h.haar(&u).unwrap(), Scalar::zero());
    }
}
