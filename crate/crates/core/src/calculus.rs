//! First-order calculus on the structure group and the total calculus `Ω(P)`.
//!
//! `Γ_inv = ker ε / ℛ` is computed exactly on a finite slice of the group
//! algebra. `Ω(P) = hor_P ⊗ Γ_inv^∧` is a presented algebra whose extra
//! generators are a basis `ϑ_a` of `Γ_inv`, with `ϑφ = (−1)^{∂φ}Σφ_k(ϑ∘c_k)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::connection::{curvature_extract, CovMap};
use crate::error::{Error, Result};
use crate::hopf::Hopf;
use crate::instance::{CalculusDef, Instance};
use crate::linalg::{kernel, reduce, rref, SparseRow};
use crate::ncalg::{lenlex, Algebra, Derivation, GenMap, Generator, NcPoly, Rule, Tensor, Word};
use crate::report::Check;
use crate::sample::Sampler;
use crate::scalar::Scalar;

/// The ideal slice used for quotienting: rows of `ℛ ∩ V_L` in row echelon
/// form over words ordered from largest to smallest.
#[derive(Clone, Debug)]
struct Slice {
    len: usize,
    index: BTreeMap<Word, usize>,
    ideal: Vec<SparseRow>,
    /// Reduced representatives augmented with unit vectors after `nwords`.
    reps: Vec<SparseRow>,
    nwords: usize,
}

/// A left-covariant first-order calculus `Γ` given by a right ideal `ℛ`.
#[derive(Clone, Debug)]
pub struct Fodc {
    pub hopf: Hopf,
    pub ideal: Vec<NcPoly>,
    pub names: Vec<String>,
    /// Representatives in `ker ε` of the basis of `Γ_inv`.
    pub reps: Vec<NcPoly>,
    slice: Slice,
}

fn desc(a: &Word, b: &Word) -> Ordering {
    lenlex(b, a)
}

impl Fodc {
    pub fn new(hopf: &Hopf, ideal: Vec<NcPoly>, names: Vec<String>, reps: Vec<NcPoly>, len: usize) -> Result<Fodc> {
        let alg = &hopf.alg;
        let ideal: Vec<NcPoly> = ideal.iter().map(|r| alg.nf(r)).collect();
        let reps: Vec<NcPoly> = reps.iter().map(|r| alg.nf(r)).collect();
        let mut elems = Vec::new();
        for r in &ideal {
            for w in alg.normal_words(len + 1) {
                elems.push(alg.mul(r, &NcPoly::word(w)));
            }
        }
        let mut words: Vec<Word> = alg.normal_words(len);
        for e in &elems {
            words.extend(e.terms().map(|(w, _)| w.clone()));
        }
        words.sort_by(desc);
        words.dedup();
        let index: BTreeMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let nwords = words.len();
        let vec = |p: &NcPoly| -> SparseRow { p.terms().map(|(w, c)| (index[w], c.clone())).collect() };
        let all = rref(elems.iter().map(vec).collect());
        let ideal_rows: Vec<SparseRow> =
            all.into_iter().filter(|r| words[*r.keys().next().expect("pivot")].len() <= len).collect();
        let mut aug = Vec::new();
        for (k, rep) in reps.iter().enumerate() {
            if rep.max_len() > len {
                return Err(Error::Config(format!("representative {} exceeds the slice", alg.fmt(rep))));
            }
            let mut row = reduce(&ideal_rows, &vec(rep));
            row.insert(nwords + k, Scalar::one());
            aug.push(row);
        }
        let rep_rows = rref(aug);
        let slice = Slice { len, index, ideal: ideal_rows, reps: rep_rows, nwords };
        Ok(Fodc { hopf: hopf.clone(), ideal, names, reps, slice })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn slice_len(&self) -> usize {
        self.slice.len
    }

    fn vector(&self, a: &NcPoly) -> Result<SparseRow> {
        let a = self.hopf.alg.nf(a);
        let mut row = SparseRow::new();
        for (w, c) in a.terms() {
            let i = self.slice.index.get(w).ok_or_else(|| {
                Error::Config(format!("`{}` lies outside the calculus slice", self.hopf.alg.word_to_string(w)))
            })?;
            row.insert(*i, c.clone());
        }
        Ok(row)
    }

    /// Counit-free part `a − ε(a)`.
    fn augment(&self, a: &NcPoly) -> NcPoly {
        a.sub(&NcPoly::scalar(self.hopf.eps(a)))
    }

    pub fn in_ideal(&self, a: &NcPoly) -> Result<bool> {
        Ok(reduce(&self.slice.ideal, &self.vector(a)?).is_empty())
    }

    /// `π(a)` on the basis, with `π(a) := π(a − ε(a))`.
    pub fn pi(&self, a: &NcPoly) -> Result<Vec<Scalar>> {
        let v = reduce(&self.slice.ideal, &self.vector(&self.augment(a))?);
        let r = reduce(&self.slice.reps, &v);
        if r.keys().any(|&k| k < self.slice.nwords) {
            return Err(Error::Inconsistent(format!(
                "{} is not in the span of the Gamma_inv basis modulo the ideal",
                self.hopf.alg.fmt(a)
            )));
        }
        Ok((0..self.dim()).map(|k| r.get(&(self.slice.nwords + k)).map(|c| -c).unwrap_or_else(Scalar::zero)).collect())
    }

    /// `ϑ_k ∘ b = π(r_k b)`.
    pub fn circ(&self, k: usize, b: &NcPoly) -> Result<Vec<Scalar>> {
        self.pi(&self.hopf.alg.mul(&self.reps[k], b))
    }

    /// `ϖ(ϑ_k) = Σ_b ϑ_b ⊗ c_kb`, returned as the list `c_kb`.
    pub fn varpi(&self, k: usize) -> Result<Vec<NcPoly>> {
        let mut out = vec![NcPoly::zero(); self.dim()];
        for (c, x) in self.hopf.ad(&self.reps[k]).by_last() {
            for (b, s) in self.pi(&x)?.into_iter().enumerate() {
                out[b].add_term(c.clone(), s);
            }
        }
        Ok(out.iter().map(|p| self.hopf.alg.nf(p)).collect())
    }

    /// `ϑ_k* = −π(κ(r_k)*)`.
    pub fn star(&self, k: usize) -> Result<Vec<Scalar>> {
        let x = self.hopf.star(&self.hopf.kappa(&self.reps[k]));
        Ok(self.pi(&x)?.into_iter().map(|c| -c).collect())
    }

    /// `dim (ker ε ∩ V_L) / (ℛ ∩ V_L)`.
    pub fn slice_dim(&self) -> usize {
        self.hopf.alg.normal_words(self.slice.len).len() - 1 - self.slice.ideal.len()
    }
}

/// A linear map on the group algebra checked for annihilating `ℛ`.
pub struct Annihilator<'a> {
    pub name: String,
    pub eval: Box<dyn Fn(&NcPoly) -> NcPoly + 'a>,
}

/// FODC invariants of `ℛ` and the maximality probe up to word length `len`.
pub fn verify_ideal(fodc: &Fodc, maps: &[Annihilator], len: usize) -> Vec<Check> {
    let alg = &fodc.hopf.alg;
    let gens: Vec<NcPoly> = (0..alg.num_gens() as u32).map(NcPoly::gen).collect();
    let member = |x: &NcPoly| fodc.in_ideal(x).unwrap_or(false);
    let mut checks = Vec::new();

    let w = fodc.ideal.iter().filter(|r| !fodc.hopf.eps(r).is_zero()).map(|r| alg.fmt(r)).collect();
    checks.push(Check::from_witnesses("calculus.ideal.counit", "R in ker eps", w));

    let mut w = Vec::new();
    for r in &fodc.ideal {
        for g in &gens {
            if !member(&alg.mul(r, g)) {
                w.push(format!("{} * {}", alg.fmt(r), alg.fmt(g)));
            }
        }
    }
    checks.push(Check::from_witnesses("calculus.ideal.right", "R A in R", w));

    let mut w = Vec::new();
    for r in &fodc.ideal {
        for (c, x) in fodc.hopf.ad(r).by_last() {
            if !member(&alg.nf(&x)) {
                w.push(format!("ad({}) leg {}", alg.fmt(r), alg.word_to_string(&c)));
            }
        }
    }
    checks.push(Check::from_witnesses("calculus.ideal.ad", "ad(R) in R (x) A", w));

    let w = fodc
        .ideal
        .iter()
        .filter(|r| !member(&fodc.hopf.star(&fodc.hopf.kappa(r))))
        .map(|r| alg.fmt(r))
        .collect();
    checks.push(Check::from_witnesses("calculus.ideal.star", "kappa(R)* in R", w));

    let mut w = Vec::new();
    for m in maps {
        for r in &fodc.ideal {
            for word in alg.normal_words(2) {
                let x = alg.mul(r, &NcPoly::word(word));
                if !(m.eval)(&x).is_zero() {
                    w.push(format!("{} on {}", m.name, alg.fmt(&x)));
                }
            }
        }
    }
    checks.push(Check::from_witnesses("calculus.ideal.annihilated", "every supplied map vanishes on R", w));

    let words: Vec<Word> = alg.normal_words(len).into_iter().filter(|w| !w.is_empty()).collect();
    let elems: Vec<NcPoly> = words.iter().map(|w| fodc.augment(&NcPoly::word(w.clone()))).collect();
    let mut rows: BTreeMap<(usize, Word), SparseRow> = BTreeMap::new();
    for (col, e) in elems.iter().enumerate() {
        for (k, m) in maps.iter().enumerate() {
            for (w, c) in (m.eval)(e).terms() {
                rows.entry((k, w.clone())).or_default().insert(col, c.clone());
            }
        }
    }
    let rows: Vec<SparseRow> = rows.into_values().collect();
    let mut w = Vec::new();
    for v in kernel(&rows, elems.len()) {
        let mut x = NcPoly::zero();
        for (c, e) in v.iter().zip(&elems) {
            if !c.is_zero() {
                x.add_assign(&e.scale(c));
            }
        }
        match fodc.in_ideal(&x) {
            Ok(true) => {}
            _ => w.push(alg.fmt(&alg.nf(&x))),
        }
    }
    checks.push(
        Check::from_witnesses(
            "calculus.ideal.maximal",
            "every element of ker eps annihilated by all maps lies in R",
            w,
        )
        .with_detail(format!("word length <= {len}")),
    );

    let dim = fodc.slice_dim();
    let c = if dim == fodc.dim() {
        Check::pass("calculus.gamma_inv.dim", "dim Gamma_inv = dim ker eps / R")
    } else {
        Check::fail(
            "calculus.gamma_inv.dim",
            "dim Gamma_inv = dim ker eps / R",
            format!("slice quotient has dimension {dim}, basis has {}", fodc.dim()),
        )
    };
    checks.push(c.with_detail(format!("dim = {dim}")));
    checks
}

/// `Γ_inv`, its higher-order calculus, `Ω(P)` with `d`, and `F̂`.
#[derive(Clone, Debug)]
pub struct Calculus {
    pub fodc: Fodc,
    /// `Γ_inv^∧` on the basis `ϑ_a`.
    pub wedge: Algebra,
    pub d_wedge: Vec<NcPoly>,
    /// Embedded differential, two slots in `wedge`.
    pub delta: Vec<Tensor>,
    /// `Ω(P)`; generators of `hor_P` first, then `ϑ_a`.
    pub omega: Algebra,
    pub nh: usize,
    /// `Γ^∧ = 𝒜 ⊗ Γ_inv^∧`; group generators first, then `ϑ_a`.
    pub gamma: Algebra,
    pub d: Derivation,
    pub d_gamma: Derivation,
    pub fhat: GenMap,
    /// `ϱ_∇` on the group generators.
    pub rho: CovMap,
}

fn theta_poly(coeffs: &[Scalar], shift: usize) -> NcPoly {
    coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (vec![(shift + k) as u32], c.clone())).collect()
}

fn shift_poly(p: &NcPoly, shift: usize) -> NcPoly {
    p.terms().map(|(w, c)| (w.iter().map(|&g| g + shift as u32).collect(), c.clone())).collect()
}

impl Calculus {
    pub fn build(inst: &Instance, def: &CalculusDef) -> Result<Calculus> {
        let hopf = &inst.hopf;
        let hor = &inst.hor;
        let ctx = &inst.ctx;
        let ideal = def.ideal.iter().map(|s| ctx.poly(&hopf.alg, s)).collect::<Result<Vec<_>>>()?;
        let names: Vec<String> = def.basis.iter().map(|b| b.name.clone()).collect();
        let reps = def.basis.iter().map(|b| ctx.poly(&hopf.alg, &b.rep)).collect::<Result<Vec<_>>>()?;
        let fodc = Fodc::new(hopf, ideal, names.clone(), reps, def.slice)?;
        let m = fodc.dim();

        let free = Algebra::new(
            "gamma_inv",
            names.iter().map(|n| Generator { name: n.clone(), degree: 1, star: None }).collect(),
            Vec::new(),
        )?;
        let stars: Vec<NcPoly> = (0..m).map(|k| fodc.star(k).map(|c| theta_poly(&c, 0))).collect::<Result<_>>()?;
        for (k, b) in def.basis.iter().enumerate() {
            let declared = ctx.poly(&free, &b.star)?;
            if declared != stars[k] {
                return Err(Error::Inconsistent(format!(
                    "declared star of {} is {}, the calculus gives {}",
                    b.name,
                    free.fmt(&declared),
                    free.fmt(&stars[k])
                )));
            }
        }
        let wedge_gens: Vec<Generator> = names
            .iter()
            .zip(&stars)
            .map(|(n, s)| Generator { name: n.clone(), degree: 1, star: Some(s.clone()) })
            .collect();
        let mut wedge_rules = Vec::new();
        for [l, r] in &def.relations {
            wedge_rules.push(Rule { lhs: ctx.word(&free, l)?, rhs: ctx.poly(&free, r)? });
        }
        let wedge = Algebra::new("gamma_inv^", wedge_gens.clone(), wedge_rules.clone())?;
        let d_wedge = names
            .iter()
            .map(|n| def.d_wedge.get(n).map(|s| ctx.poly(&wedge, s)).unwrap_or_else(|| Ok(NcPoly::zero())))
            .collect::<Result<Vec<_>>>()?;
        let delta = names
            .iter()
            .map(|n| match def.delta.get(n) {
                Some(t) => ctx.tensor(&[&wedge, &wedge], t),
                None => Ok(Tensor::zero()),
            })
            .collect::<Result<Vec<_>>>()?;

        // Ω(P)
        let nh = hor.alg.num_gens();
        let mut gens: Vec<Generator> = hor.alg.generators().to_vec();
        for g in &wedge_gens {
            gens.push(Generator { name: g.name.clone(), degree: 1, star: g.star.as_ref().map(|s| shift_poly(s, nh)) });
        }
        let mut rules: Vec<Rule> = hor.alg.rules().to_vec();
        for r in &wedge_rules {
            rules.push(Rule { lhs: r.lhs.iter().map(|&g| g + nh as u32).collect(), rhs: shift_poly(&r.rhs, nh) });
        }
        for a in 0..m {
            for g in 0..nh as u32 {
                let deg = hor.alg.gen_degree(g);
                let mut rhs = NcPoly::zero();
                for (s, c) in hor.f_wedge(&NcPoly::gen(g)).terms() {
                    if s[0].len() > 1 {
                        return Err(Error::Config("F^ images of generators need single-letter first legs".into()));
                    }
                    let circ = theta_poly(&fodc.circ(a, &NcPoly::word(s[1].clone()))?, nh);
                    let c = if deg % 2 == 0 { c.clone() } else { -c };
                    rhs.add_assign(&NcPoly::word(s[0].clone()).concat(&circ).scale(&c));
                }
                rules.push(Rule { lhs: vec![(nh + a) as u32, g], rhs });
            }
        }
        let omega = Algebra::new("Omega(P)", gens, rules)?;

        // Γ^∧(G)
        let ga = &hopf.alg;
        let ng = ga.num_gens();
        let mut ggens: Vec<Generator> = ga.generators().to_vec();
        for g in &wedge_gens {
            ggens.push(Generator { name: g.name.clone(), degree: 1, star: g.star.as_ref().map(|s| shift_poly(s, ng)) });
        }
        let mut grules: Vec<Rule> = ga.rules().to_vec();
        for r in &wedge_rules {
            grules.push(Rule { lhs: r.lhs.iter().map(|&g| g + ng as u32).collect(), rhs: shift_poly(&r.rhs, ng) });
        }
        for a in 0..m {
            for g in 0..ng as u32 {
                let mut rhs = NcPoly::zero();
                for (s, c) in hopf.phi(&NcPoly::gen(g)).terms() {
                    let circ = theta_poly(&fodc.circ(a, &NcPoly::word(s[1].clone()))?, ng);
                    rhs.add_assign(&NcPoly::word(s[0].clone()).concat(&circ).scale(c));
                }
                grules.push(Rule { lhs: vec![(ng + a) as u32, g], rhs });
            }
        }
        let gamma = Algebra::new("Gamma^(G)", ggens, grules)?;

        // d on Ω(P)
        let rho = curvature_extract(hor, &inst.pairs, &inst.nabla);
        let mut images = Vec::new();
        for g in 0..nh as u32 {
            let deg = hor.alg.gen_degree(g);
            let mut img = inst.nabla.images[g as usize].clone();
            for (s, c) in hor.f_wedge(&NcPoly::gen(g)).terms() {
                let p = theta_poly(&fodc.pi(&NcPoly::word(s[1].clone()))?, nh);
                let c = if deg % 2 == 0 { c.clone() } else { -c };
                img.add_assign(&omega.mul(&NcPoly::word(s[0].clone()), &p).scale(&c));
            }
            images.push(omega.nf(&img));
        }
        for (a, dw) in d_wedge.iter().enumerate() {
            let curv = rho.eval(hor, &inst.pairs, &fodc.reps[a]);
            images.push(omega.nf(&shift_poly(dw, nh).add(&curv)));
        }
        let d = Derivation { degree: 1, images };

        let mut gimages = Vec::new();
        for g in 0..ng as u32 {
            let mut img = NcPoly::zero();
            for (s, c) in hopf.phi(&NcPoly::gen(g)).terms() {
                let p = theta_poly(&fodc.pi(&NcPoly::word(s[1].clone()))?, ng);
                img.add_assign(&gamma.mul(&NcPoly::word(s[0].clone()), &p).scale(c));
            }
            gimages.push(gamma.nf(&img));
        }
        for dw in &d_wedge {
            gimages.push(gamma.nf(&shift_poly(dw, ng)));
        }
        let d_gamma = Derivation { degree: 1, images: gimages };

        // F̂
        let mut fimages = Vec::new();
        for g in 0..nh as u32 {
            fimages.push(hor.f_wedge(&NcPoly::gen(g)));
        }
        for a in 0..m {
            let mut t = Tensor::term(vec![vec![], vec![(ng + a) as u32]], Scalar::one());
            for (b, c) in fodc.varpi(a)?.iter().enumerate() {
                for (w, s) in c.terms() {
                    t.add_term(vec![vec![(nh + b) as u32], w.clone()], s.clone());
                }
            }
            fimages.push(t);
        }
        let fhat = GenMap::new(fimages);

        Ok(Calculus { fodc, wedge, d_wedge, delta, omega, nh, gamma, d, d_gamma, fhat, rho })
    }

    pub fn theta(&self, a: usize) -> NcPoly {
        NcPoly::gen((self.nh + a) as u32)
    }

    /// `π(a)` as an element of `Ω(P)`.
    pub fn pi(&self, a: &NcPoly) -> Result<NcPoly> {
        Ok(theta_poly(&self.fodc.pi(a)?, self.nh))
    }

    pub fn d(&self, x: &NcPoly) -> NcPoly {
        self.d.apply(&self.omega, x)
    }

    pub fn fhat(&self, x: &NcPoly) -> Tensor {
        self.fhat.apply(x, &[&self.omega, &self.gamma])
    }

    /// `(d ⊗ id + (−1)^{∂} id ⊗ d)` on `Ω(P) ⊗ Γ^∧`.
    fn d_tensor(&self, t: &Tensor) -> Tensor {
        let algs = [&self.omega, &self.gamma];
        let mut out = Tensor::zero();
        for (s, c) in t.terms() {
            let x = NcPoly::word(s[0].clone());
            let y = NcPoly::word(s[1].clone());
            let dx = self.d(&x);
            let dy = self.d_gamma.apply(&self.gamma, &y);
            out.add_assign(&Tensor::pure(&[&dx, &y]).scale(c));
            let sign = if self.omega.word_degree(&s[0]) % 2 == 0 { c.clone() } else { -c };
            out.add_assign(&Tensor::pure(&[&x, &dy]).scale(&sign));
        }
        out.nf(&algs)
    }

    fn samples(&self, count: usize, seed: u64) -> Vec<NcPoly> {
        let mut s = Sampler::new(seed);
        let gens: Vec<u32> = (0..self.omega.num_gens() as u32).collect();
        (0..count).map(|_| s.homogeneous(&self.omega, &gens, 3, 3)).collect()
    }

    /// Checks on `Ω(P)`, `d` and `F̂`.
    pub fn verify(&self, samples: usize, seed: u64, confluence_len: usize) -> Vec<Check> {
        let om = &self.omega;
        let fmt = |p: &NcPoly| om.fmt(p);
        let gens: Vec<NcPoly> = (0..om.num_gens() as u32).map(NcPoly::gen).collect();
        let mut elems = gens.clone();
        elems.extend(self.samples(samples, seed));
        let mut checks = Vec::new();

        checks.push(match crate::ncalg::full_check(om, confluence_len) {
            Ok(r) if r.passed() => Check::pass("omega.confluence", "overlap ambiguities of Omega(P) resolve"),
            Ok(r) => Check::fail(
                "omega.confluence",
                "overlap ambiguities of Omega(P) resolve",
                r.failures().next().map(|a| format!("{a:?}")).unwrap_or_default(),
            ),
            Err(e) => Check::fail("omega.confluence", "overlap ambiguities of Omega(P) resolve", e.to_string()),
        });

        let w = elems.iter().filter(|x| !om.star(&om.star(x)).sub(x).is_zero()).map(&fmt).collect();
        checks.push(Check::from_witnesses("omega.star.involution", "(x*)* = x", w));

        let w = self.d.relation_residues(om).into_iter().map(|(r, p)| format!("{r}: {}", fmt(&p))).collect();
        checks.push(Check::from_witnesses("omega.d.relations", "d respects the relations of Omega(P)", w));

        let w = elems.iter().filter(|x| !self.d(&self.d(x)).is_zero()).map(&fmt).collect();
        checks.push(Check::from_witnesses("omega.d_squared", "d^2 = 0", w));

        let w = elems
            .iter()
            .filter(|x| !om.nf(&self.d(&om.star(x)).sub(&om.star(&self.d(x)))).is_zero())
            .map(&fmt)
            .collect();
        checks.push(Check::from_witnesses("omega.d_star", "d(x*) = d(x)*", w));

        let w = self
            .d_gamma
            .relation_residues(&self.gamma)
            .into_iter()
            .map(|(r, p)| format!("{r}: {}", self.gamma.fmt(&p)))
            .collect();
        checks.push(Check::from_witnesses("gamma.d.relations", "d respects the relations of Gamma^", w));

        let algs = [om, &self.gamma];
        let w = self.fhat.relation_residues(om, &algs).into_iter().map(|(r, p)| format!("{r}: {p}")).collect();
        checks.push(Check::from_witnesses("fhat.homomorphism", "F^ respects the relations of Omega(P)", w));

        let w = elems
            .iter()
            .filter(|x| !self.fhat(&om.star(x)).sub(&self.fhat(x).star(&algs)).nf(&algs).is_zero())
            .map(&fmt)
            .collect();
        checks.push(Check::from_witnesses("fhat.star", "F^(x*) = F^(x)*", w));

        let w = elems
            .iter()
            .filter(|x| !self.fhat(&self.d(x)).sub(&self.d_tensor(&self.fhat(x))).nf(&algs).is_zero())
            .map(fmt)
            .collect();
        checks.push(Check::from_witnesses("fhat.differential", "F^ d = (d (x) id + (-1)^k id (x) d) F^", w));

        checks.push(self.horizontality_check(3));
        checks
    }

    /// `hor_P = F̂⁻¹(Ω(P) ⊗ 𝒜)` on the span of normal words of length `≤ len`.
    pub fn horizontality_check(&self, len: usize) -> Check {
        const NAME: &str = "fhat.horizontal";
        const ANCHOR: &str = "hor_P = F^^{-1}(Omega(P) (x) A)";
        let om = &self.omega;
        let words = om.normal_words(len);
        let mut rows: BTreeMap<Vec<Word>, SparseRow> = BTreeMap::new();
        for (col, w) in words.iter().enumerate() {
            for (s, c) in self.fhat(&NcPoly::word(w.clone())).terms() {
                if self.gamma.word_degree(&s[1]) != 0 {
                    rows.entry(s.clone()).or_default().insert(col, c.clone());
                }
            }
        }
        let rows: Vec<SparseRow> = rows.into_values().collect();
        let is_hor = |w: &Word| w.iter().all(|&g| (g as usize) < self.nh);
        let mut bad = Vec::new();
        for v in kernel(&rows, words.len()) {
            if let Some((i, _)) = v.iter().enumerate().find(|(i, c)| !c.is_zero() && !is_hor(&words[*i])) {
                bad.push(om.word_to_string(&words[i]));
            }
        }
        Check::from_witnesses(NAME, ANCHOR, bad).with_detail(format!("word length <= {len}"))
    }
}

/// `ω(ϑ) = ϑ + χ(ϑ)` with `χ` a vertical map; `χ = 0` gives `ω_∇`.
#[derive(Clone, Debug)]
pub struct ConnectionForm {
    pub chi: CovMap,
    /// `ω(ϑ_a)` in `Ω(P)`.
    pub values: Vec<NcPoly>,
}

/// `ω_D(ϑ) = 1⊗ϑ + χ(ϑ)`, rejected if `χ` does not vanish on `ℛ`.
pub fn connection_from_chi(inst: &Instance, calc: &Calculus, chi: &CovMap) -> Result<ConnectionForm> {
    let ga = &inst.hopf.alg;
    for r in &calc.fodc.ideal {
        for w in ga.normal_words(2) {
            let x = ga.mul(r, &NcPoly::word(w));
            let v = chi.eval(&inst.hor, &inst.pairs, &x);
            if !v.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "vertical map does not vanish on {}: {}",
                    ga.fmt(&x),
                    inst.hor.alg.fmt(&v)
                )));
            }
        }
    }
    let values = (0..calc.fodc.dim())
        .map(|a| calc.omega.nf(&calc.theta(a).add(&chi.eval(&inst.hor, &inst.pairs, &calc.fodc.reps[a]))))
        .collect();
    Ok(ConnectionForm { chi: chi.clone(), values })
}

impl ConnectionForm {
    /// `ω` on a combination of the basis given as an `Ω(P)` element linear in `ϑ`.
    pub fn apply(&self, calc: &Calculus, x: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in x.terms() {
            if let [g] = w.as_slice() {
                out.add_assign(&self.values[*g as usize - calc.nh].scale(c));
            }
        }
        calc.omega.nf(&out)
    }

    /// `D_ω(φ) = dφ − (−1)^{∂φ} Σ φ_k ωπ(c_k)` on `hor_P`.
    pub fn covariant_derivative(&self, inst: &Instance, calc: &Calculus, x: &NcPoly) -> Result<NcPoly> {
        let hor = &inst.hor;
        let mut out = calc.d(x);
        for (s, c) in hor.f_wedge(x).terms() {
            let deg = hor.alg.word_degree(&s[0]);
            let w = self.apply(calc, &calc.pi(&NcPoly::word(s[1].clone()))?);
            let c = if deg % 2 == 0 { c.clone() } else { -c };
            out = out.sub(&calc.omega.mul(&NcPoly::word(s[0].clone()), &w).scale(&c));
        }
        Ok(calc.omega.nf(&out))
    }

    /// Pseudotensoriality and hermiticity.
    pub fn verify(&self, calc: &Calculus) -> Vec<Check> {
        let algs = [&calc.omega, &calc.gamma];
        let mut wp = Vec::new();
        let mut wh = Vec::new();
        for a in 0..calc.fodc.dim() {
            let lhs = calc.fhat(&self.values[a]);
            let mut rhs = Tensor::term(vec![vec![], vec![(calc.gamma.num_gens() - calc.fodc.dim() + a) as u32]], Scalar::one());
            if let Ok(vp) = calc.fodc.varpi(a) {
                for (b, c) in vp.iter().enumerate() {
                    rhs.add_assign(&Tensor::pure(&[&self.values[b], c]));
                }
            }
            if !lhs.sub(&rhs).nf(&algs).is_zero() {
                wp.push(calc.fodc.names[a].clone());
            }
            let star = calc.omega.star(&calc.theta(a));
            if !calc.omega.nf(&self.apply(calc, &star).sub(&calc.omega.star(&self.values[a]))).is_zero() {
                wh.push(calc.fodc.names[a].clone());
            }
        }
        vec![
            Check::from_witnesses("connection_form.pseudotensorial", "F^ omega(t) = sum_k omega(t_k) (x) c_k + 1 (x) t", wp),
            Check::from_witnesses("connection_form.hermitian", "omega(t*) = omega(t)*", wh),
        ]
    }
}
