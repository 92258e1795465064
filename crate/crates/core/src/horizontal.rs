//! Quantum principal bundles and the horizontal algebra `hor_P = ℬ⊗𝕍^∧`.

use crate::bimodule::{Bimodule, Exterior};
use crate::error::{Error, Result};
use crate::hopf::Hopf;
use crate::ncalg::{check_confluence, check_star_closure, Algebra, GenMap, Generator, NcPoly, Rule, Tensor, Word};
use crate::report::Check;

/// A total algebra `ℬ` with a right coaction `F: ℬ → ℬ⊗𝒜` given on generators.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub hopf: Hopf,
    pub total: Algebra,
    pub coaction: GenMap,
    /// Declared generators of the fixed-point subalgebra `𝒱`.
    pub base: Vec<(String, NcPoly)>,
}

impl Bundle {
    pub fn f(&self, b: &NcPoly) -> Tensor {
        self.coaction.apply(b, &[&self.total, &self.hopf.alg])
    }

    /// `F(b) = b⊗1`.
    pub fn is_fixed(&self, b: &NcPoly) -> bool {
        let b = self.total.nf(b);
        let fixed: Tensor = b.terms().map(|(w, c)| (vec![w.clone(), Vec::new()], c.clone())).collect();
        self.f(&b).sub(&fixed).is_zero()
    }

    pub fn verify(&self, samples: &[NcPoly]) -> Vec<Check> {
        let b = &self.total;
        let a = &self.hopf.alg;
        let targets = [b, a];
        let mut elems: Vec<NcPoly> = (0..b.num_gens() as u32).map(NcPoly::gen).collect();
        elems.extend(samples.iter().map(|s| b.nf(s)));
        let mut checks = Vec::new();
        let res = self.coaction.relation_residues(b, &targets);
        checks.push(Check::from_witnesses(
            "bundle.coaction.homomorphism",
            "F(xy) = F(x)F(y) on defining relations",
            res.into_iter().map(|(r, d)| format!("{r}: {d}")).collect(),
        ));
        let mut star_w = Vec::new();
        let mut coassoc_w = Vec::new();
        let mut counit_w = Vec::new();
        for x in &elems {
            let fx = self.f(x);
            if !self.f(&b.star(x)).sub(&fx.star(&targets)).nf(&targets).is_zero() {
                star_w.push(b.fmt(x));
            }
            let left = fx.expand_slot(0, |w| self.f(&NcPoly::word(w.clone()))).nf(&[b, a, a]);
            let right = fx.expand_slot(1, |w| self.hopf.phi(&NcPoly::word(w.clone()))).nf(&[b, a, a]);
            if !left.sub(&right).is_zero() {
                coassoc_w.push(b.fmt(x));
            }
            let back = fx.contract_slot(1, |w| self.hopf.eps_word(w)).to_poly();
            if !b.nf(&back.sub(x)).is_zero() {
                counit_w.push(b.fmt(x));
            }
        }
        checks.push(Check::from_witnesses("bundle.coaction.star", "F(x*) = (* (x) *)F(x)", star_w));
        checks.push(Check::from_witnesses("bundle.coaction.coassociative", "(F (x) id)F = (id (x) phi)F", coassoc_w));
        checks.push(Check::from_witnesses("bundle.coaction.counit", "(id (x) eps)F = id", counit_w));
        let w = self.base.iter().filter(|(_, v)| !self.is_fixed(v)).map(|(n, _)| n.clone()).collect();
        checks.push(Check::from_witnesses("bundle.base.fixed", "F(v) = v (x) 1 for declared base generators", w));
        checks
    }
}

/// The horizontal algebra as a presented algebra: `ℬ` generators first, then
/// the degree-one basis of `𝕍`.
#[derive(Clone, Debug)]
pub struct Hor {
    pub alg: Algebra,
    pub nb: usize,
    pub hopf: Hopf,
    pub bm: Bimodule,
    pub ext: Exterior,
    /// `F^∧: hor_P → hor_P⊗𝒜`.
    pub f_wedge: GenMap,
}

impl Hor {
    pub fn new(bundle: &Bundle, bm: &Bimodule, ext: Exterior) -> Result<Hor> {
        let b = &bundle.total;
        let nb = b.num_gens();
        let nv = bm.dim();
        let shift = |p: &NcPoly| -> NcPoly {
            p.terms().map(|(w, c)| (w.iter().map(|&g| g + nb as u32).collect(), c.clone())).collect()
        };
        let mut gens: Vec<Generator> = b.generators().to_vec();
        for g in ext.alg.generators() {
            gens.push(Generator { name: g.name.clone(), degree: g.degree, star: g.star.as_ref().map(shift) });
        }
        let mut rules: Vec<Rule> = b.rules().to_vec();
        for r in ext.alg.rules() {
            rules.push(Rule { lhs: r.lhs.iter().map(|&g| g + nb as u32).collect(), rhs: shift(&r.rhs) });
        }
        for i in 0..nv {
            for g in 0..nb as u32 {
                let fg = bundle.f(&NcPoly::gen(g));
                let mut rhs = NcPoly::zero();
                for (s, c) in fg.terms() {
                    let m = bm.circ_word(&s[1]);
                    for j in 0..nv {
                        let mu = m.get(i, j);
                        if !mu.is_zero() {
                            let mut w = s[0].clone();
                            w.push((nb + j) as u32);
                            rhs.add_term(w, c * mu);
                        }
                    }
                }
                rules.push(Rule { lhs: vec![(nb + i) as u32, g], rhs });
            }
        }
        let alg = Algebra::new(format!("hor({})", b.name), gens, rules)?;
        let mut images = bundle.coaction.images.clone();
        for i in 0..nv {
            let mut t = Tensor::zero();
            for j in 0..nv {
                for (w, c) in bm.corep.entry(j, i).terms() {
                    t.add_term(vec![vec![(nb + j) as u32], w.clone()], c.clone());
                }
            }
            images.push(t);
        }
        Ok(Hor { alg, nb, hopf: bundle.hopf.clone(), bm: bm.clone(), ext, f_wedge: GenMap::new(images) })
    }

    pub fn nv(&self) -> usize {
        self.bm.dim()
    }

    pub fn theta(&self, i: usize) -> NcPoly {
        NcPoly::gen((self.nb + i) as u32)
    }

    /// Embeds an element of `𝕍^∧`.
    pub fn embed_v(&self, v: &NcPoly) -> NcPoly {
        let nb = self.nb as u32;
        self.alg.nf(&v.terms().map(|(w, c)| (w.iter().map(|&g| g + nb).collect(), c.clone())).collect())
    }

    pub fn is_vertical_gen(&self, g: u32) -> bool {
        g as usize >= self.nb
    }

    /// Splits a normal form into `(ℬ word, 𝕍 word) -> coefficient`.
    pub fn split_word(&self, w: &[u32]) -> (Word, Word) {
        let k = w.iter().position(|&g| self.is_vertical_gen(g)).unwrap_or(w.len());
        (w[..k].to_vec(), w[k..].iter().map(|&g| g - self.nb as u32).collect())
    }

    /// Groups a normal form by its vertical word: `Σ_w b_w ⊗ w`.
    pub fn components(&self, x: &NcPoly) -> Vec<(Word, NcPoly)> {
        let mut out: std::collections::BTreeMap<Word, NcPoly> = Default::default();
        for (w, c) in self.alg.nf(x).terms() {
            let (b, v) = self.split_word(w);
            out.entry(v).or_default().add_term(b, c.clone());
        }
        out.into_iter().collect()
    }

    pub fn mul(&self, x: &NcPoly, y: &NcPoly) -> NcPoly {
        self.alg.mul(x, y)
    }

    pub fn star(&self, x: &NcPoly) -> NcPoly {
        self.alg.star(x)
    }

    pub fn degree(&self, x: &NcPoly) -> Option<i32> {
        self.alg.degree(x)
    }

    fn targets(&self) -> [&Algebra; 2] {
        [&self.alg, &self.hopf.alg]
    }

    pub fn f_wedge(&self, x: &NcPoly) -> Tensor {
        self.f_wedge.apply(x, &self.targets())
    }

    /// `F^∧(x) = x⊗1`.
    pub fn is_invariant(&self, x: &NcPoly) -> bool {
        let x = self.alg.nf(x);
        let fixed: Tensor = x.terms().map(|(w, c)| (vec![w.clone(), Vec::new()], c.clone())).collect();
        self.f_wedge(&x).sub(&fixed).is_zero()
    }

    /// `p₀ = (id⊗h)F^∧`.
    pub fn base_project(&self, x: &NcPoly) -> Result<NcPoly> {
        let mut out = NcPoly::zero();
        for (s, c) in self.f_wedge(x).terms() {
            let h = self.hopf.haar.eval_word(&self.hopf.alg, &s[1])?;
            if !h.is_zero() {
                out.add_term(s[0].clone(), c * &h);
            }
        }
        Ok(out)
    }

    pub fn verify(&self, samples: &[NcPoly], base: &[(String, NcPoly)]) -> Vec<Check> {
        let alg = &self.alg;
        let a = &self.hopf.alg;
        let targets = self.targets();
        let mut checks = Vec::new();
        match check_confluence(alg, 4) {
            Ok(r) => checks.push(Check::from_witnesses(
                "hor.confluence",
                "(q (x) theta)(b (x) eta) = sum_k q b_k (x) (theta o c_k) eta is well defined",
                r.failures().map(|x| x.word.clone()).collect(),
            )),
            Err(e) => checks.push(Check::fail("hor.confluence", "rewrite system terminates", e.to_string())),
        }
        match check_star_closure(alg) {
            Ok(w) => checks.push(Check::from_witnesses("hor.star.closure", "(b (x) theta)* = sum_k b_k* (x) (theta* o c_k*)", w)),
            Err(e) => checks.push(Check::fail("hor.star.closure", "star respects relations", e.to_string())),
        }
        let res = self.f_wedge.relation_residues(alg, &targets);
        checks.push(Check::from_witnesses(
            "hor.f_wedge.homomorphism",
            "F^(xy) = F^(x)F^(y) on defining relations",
            res.into_iter().map(|(r, d)| format!("{r}: {d}")).collect(),
        ));
        let mut elems: Vec<NcPoly> = (0..alg.num_gens() as u32).map(NcPoly::gen).collect();
        elems.extend(samples.iter().map(|s| alg.nf(s)));
        let (mut star_w, mut co_w, mut eps_w, mut inv_w, mut deg_w) = (vec![], vec![], vec![], vec![], vec![]);
        for x in &elems {
            let fx = self.f_wedge(x);
            if !self.f_wedge(&self.star(x)).sub(&fx.star(&targets)).nf(&targets).is_zero() {
                star_w.push(alg.fmt(x));
            }
            let left = fx.expand_slot(0, |w| self.f_wedge.apply_word(w, &targets)).nf(&[alg, a, a]);
            let right = fx.expand_slot(1, |w| self.hopf.phi(&NcPoly::word(w.clone()))).nf(&[alg, a, a]);
            if !left.sub(&right).is_zero() {
                co_w.push(alg.fmt(x));
            }
            let back = fx.contract_slot(1, |w| self.hopf.eps_word(w)).to_poly();
            if !alg.nf(&back.sub(x)).is_zero() {
                eps_w.push(alg.fmt(x));
            }
            if !alg.nf(&self.star(&self.star(x)).sub(x)).is_zero() {
                inv_w.push(alg.fmt(x));
            }
            let parts = alg.homogeneous_parts(x);
            for (d, part) in parts {
                if fx_degrees(&self.f_wedge(&part), alg).iter().any(|&e| e != d) {
                    deg_w.push(alg.fmt(x));
                }
            }
        }
        checks.push(Check::from_witnesses("hor.f_wedge.star", "F^(x*) = (* (x) *)F^(x)", star_w));
        checks.push(Check::from_witnesses("hor.f_wedge.coassociative", "(F^ (x) id)F^ = (id (x) phi)F^", co_w));
        checks.push(Check::from_witnesses("hor.f_wedge.counit", "(id (x) eps)F^ = id", eps_w));
        checks.push(Check::from_witnesses("hor.f_wedge.degree", "F^ preserves degree", deg_w));
        checks.push(Check::from_witnesses("hor.star.involution", "x** = x", inv_w));
        let mut anti_w = Vec::new();
        for x in elems.iter().take(6) {
            for y in elems.iter().take(6) {
                let lhs = self.star(&self.mul(x, y));
                let mut rhs = self.mul(&self.star(y), &self.star(x));
                let (dx, dy) = (alg.degree(x).unwrap_or(0), alg.degree(y).unwrap_or(0));
                if (dx * dy) % 2 != 0 {
                    rhs = rhs.neg();
                }
                if !alg.nf(&lhs.sub(&rhs)).is_zero() {
                    anti_w.push(format!("({})({})", alg.fmt(x), alg.fmt(y)));
                }
            }
        }
        checks.push(Check::from_witnesses("hor.star.antimultiplicative", "(xy)* = (-1)^{|x||y|} y* x*", anti_w));
        let w = base
            .iter()
            .filter(|(_, v)| !self.is_invariant(&self.star(v)))
            .map(|(n, _)| format!("{n}*"))
            .collect();
        checks.push(Check::from_witnesses("hor.base.star_closed", "F^(v*) = v* (x) 1 for base generators v", w));
        checks
    }
}

fn fx_degrees(t: &Tensor, alg: &Algebra) -> Vec<i32> {
    t.terms().map(|(s, _)| alg.word_degree(&s[0])).collect()
}

/// An element of `hor_P` certified to be `F^∧`-invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseForm(pub NcPoly);

impl BaseForm {
    pub fn certify(hor: &Hor, x: &NcPoly) -> Result<BaseForm> {
        if hor.is_invariant(x) {
            Ok(BaseForm(hor.alg.nf(x)))
        } else {
            Err(Error::Inconsistent(format!("{} is not F^-invariant", hor.alg.fmt(x))))
        }
    }
}

