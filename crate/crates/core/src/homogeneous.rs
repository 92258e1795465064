//! Framed bundles from a quantum subgroup `ς: 𝒜′ → 𝒜` with a calculus `Φ` on
//! the larger group: total algebra `ℬ = 𝒜′`, coaction `(id⊗ς)φ′`, frame
//! `∇(b) = Σ b_k π_ℒ(q_k)` for `φ′(b) = Σ b_k⊗q_k`.

use std::collections::BTreeMap;

use crate::calculus::Calculus;
use crate::connection::curvature_extract;
use crate::error::{Error, Result};
use crate::hopf::Hopf;
use crate::instance::{
    BimoduleDef, BundleDef, CalculusDef, ChecksDef, CoordDef, CorepDef, FrameDef, GammaGenDef, GenDef, GroupDef,
    HaarDef, HomogeneousDef, Instance, InstanceDef, PairsDef,
};
use crate::linalg::{rref, Matrix, SparseRow};
use crate::linebundle::{gen, rel, s, term, u1_group};
use crate::ncalg::{Algebra, Derivation, GenMap, Generator, NcPoly, Tensor, Word};
use crate::report::Check;
use crate::scalar::Scalar;

/// The torus `T²`: `s`, `t` unitary grouplike.
pub fn torus_group() -> GroupDef {
    let names = ["s", "s*", "t", "t*"];
    let mut coproduct = BTreeMap::new();
    let mut counit = BTreeMap::new();
    let mut antipode = BTreeMap::new();
    let mut coreps = Vec::new();
    for (k, n) in names.iter().enumerate() {
        let partner = names[k ^ 1];
        coproduct.insert(s(n), vec![term(&["1", n, n])]);
        counit.insert(s(n), s("1"));
        antipode.insert(s(n), s(partner));
        coreps.push(CorepDef { name: s(n), matrix: vec![vec![s(n)]], unitary: true });
    }
    GroupDef {
        generators: names.iter().enumerate().map(|(k, n)| gen(n, names[k ^ 1])).collect(),
        relations: torus_relations(),
        coproduct,
        counit,
        antipode,
        antipode_inverse: None,
        haar: HaarDef { default: Some(s("0")), values: vec![rel("1", "1")] },
        coreps,
    }
}

fn torus_relations() -> Vec<[String; 2]> {
    vec![
        rel("s s*", "1"),
        rel("s* s", "1"),
        rel("t t*", "1"),
        rel("t* t", "1"),
        rel("t s", "s t"),
        rel("t s*", "s* t"),
        rel("t* s", "s t*"),
        rel("t* s*", "s* t*"),
    ]
}

/// The classical torus over the circle: `H = T²`, `ς(s) = u`, `ς(t) = 1`,
/// `𝒦 = ℂ[t, t*]`, `ℒ = span π′(t)`, `ℒ^⊥ = span π′(s)`.
pub fn torus_definition() -> InstanceDef {
    let big = torus_group();
    let names = ["s", "s*", "t", "t*"];
    let coaction = BTreeMap::from([
        (s("s"), vec![term(&["1", "s", "u"])]),
        (s("s*"), vec![term(&["1", "s*", "u*"])]),
        (s("t"), vec![term(&["1", "t", "1"])]),
        (s("t*"), vec![term(&["1", "t*", "1"])]),
    ]);
    let id2 = || vec![vec![s("1"), s("0")], vec![s("0"), s("1")]];
    InstanceDef {
        name: s("torus-homogeneous"),
        description: s("classical torus as a U(1) bundle over the circle, frame from the subgroup inclusion"),
        parameters: Vec::new(),
        group: u1_group(),
        bimodule: BimoduleDef {
            basis: vec![GenDef { name: s("e"), degree: 1, star: Some(s("-e")) }],
            coaction: vec![vec![s("1")]],
            circ: BTreeMap::from([(s("u"), vec![vec![s("1")]]), (s("u*"), vec![vec![s("1")]])]),
        },
        bundle: BundleDef {
            generators: big.generators.clone(),
            relations: torus_relations(),
            coaction,
            base: vec![s("t"), s("t*")],
        },
        frame: FrameDef {
            fields: BTreeMap::from([
                (s("s"), vec![s("0")]),
                (s("s*"), vec![s("0")]),
                (s("t"), vec![s("t")]),
                (s("t*"), vec![s("-t*")]),
            ]),
            dual_pairs: vec![
                PairsDef { corep: s("u"), p: vec![vec![s("s")]], q: vec![vec![s("s*")]] },
                PairsDef { corep: s("u*"), p: vec![vec![s("s*")]], q: vec![vec![s("s")]] },
            ],
            coordinates: Some(CoordDef { b: vec![vec![s("t*")], vec![s("-1")]], f: vec![s("t"), s("1")] }),
        },
        connections: Vec::new(),
        calculus: Some(CalculusDef {
            ideal: vec![s("u^2 - 2 u + 1")],
            slice: 4,
            basis: vec![GammaGenDef { name: s("vt"), rep: s("u - 1"), star: s("-vt") }],
            relations: vec![rel("vt vt", "0")],
            d_wedge: BTreeMap::from([(s("vt"), s("0"))]),
            delta: BTreeMap::from([(s("vt"), vec![term(&["-1", "vt", "vt"])])]),
            minimal: false,
        }),
        homogeneous: Some(HomogeneousDef {
            big,
            restriction: BTreeMap::from([(s("s"), s("u")), (s("s*"), s("u*")), (s("t"), s("1")), (s("t*"), s("1"))]),
            forms: vec![
                GammaGenDef { name: s("es"), rep: s("s - 1"), star: s("-es") },
                GammaGenDef { name: s("et"), rep: s("t - 1"), star: s("-et") },
            ],
            circ: names.iter().map(|n| (s(n), id2())).collect(),
            pi: BTreeMap::from([
                (s("s"), vec![s("1"), s("0")]),
                (s("s*"), vec![s("-1"), s("0")]),
                (s("t"), vec![s("0"), s("1")]),
                (s("t*"), vec![s("0"), s("-1")]),
            ]),
            horizontal: vec![1],
            kernel_gens: vec![s("t"), s("t*")],
            coordinate_elements: vec![s("t - 1")],
        }),
        checks: ChecksDef { bound: 2, regular: Some(false), ..ChecksDef::default() },
    }
}

/// Loaded subgroup data attached to an instance whose total algebra is `𝒜′`.
#[derive(Clone, Debug)]
pub struct Homogeneous {
    pub big: Hopf,
    /// `ς`, one slot in the group algebra.
    pub restriction: GenMap,
    pub forms: Vec<String>,
    /// `Φ_inv` star: `e_i* = Σ_j S[i][j] e_j`.
    pub form_star: Matrix,
    /// Per generator of `H`: `e_j∘g = Σ_i M[j][i] e_i`.
    pub circ: Vec<Matrix>,
    /// `π′` on generators of `H`.
    pub pi_gens: Vec<Vec<Scalar>>,
    pub reps: Vec<NcPoly>,
    pub horizontal: Vec<usize>,
    pub kernel_gens: Vec<NcPoly>,
    pub coordinate_elements: Vec<NcPoly>,
}

fn vec_circ(v: &[Scalar], m: &Matrix) -> Vec<Scalar> {
    (0..m.cols)
        .map(|i| v.iter().enumerate().fold(Scalar::zero(), |acc, (j, x)| &acc + &(x * m.get(j, i))))
        .collect()
}

fn vec_add(a: &mut [Scalar], b: &[Scalar], c: &Scalar) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = &*x + &(y * c);
    }
}

impl Homogeneous {
    pub fn build(inst: &Instance) -> Result<Homogeneous> {
        let def = inst.def.homogeneous.as_ref().ok_or_else(|| Error::Config("no homogeneous section".into()))?;
        let ctx = &inst.ctx;
        let big = ctx.hopf(&format!("{}:big", inst.def.name), &def.big)?;
        let total = &inst.bundle.total;
        let same = big.alg.num_gens() == total.num_gens()
            && (0..total.num_gens() as u32).all(|g| big.alg.gen_name(g) == total.gen_name(g));
        if !same {
            return Err(Error::Config("the total algebra must be the algebra of the larger group".into()));
        }
        let mut images = Vec::new();
        for g in 0..big.alg.num_gens() as u32 {
            let n = big.alg.gen_name(g);
            let text = def.restriction.get(n).ok_or_else(|| Error::Config(format!("restriction missing for {n}")))?;
            let p = ctx.poly(&inst.hopf.alg, text)?;
            images.push(p.terms().map(|(w, c)| (vec![w.clone()], c.clone())).fold(Tensor::zero(), |mut t, (w, c)| {
                t.add_term(w, c);
                t
            }));
        }
        let restriction = GenMap::new(images);
        let forms: Vec<String> = def.forms.iter().map(|f| f.name.clone()).collect();
        let n = forms.len();
        let free = Algebra::new(
            "forms",
            forms.iter().map(|f| Generator { name: f.clone(), degree: 1, star: None }).collect(),
            Vec::new(),
        )?;
        let mut form_star = Matrix::zeros(n, n);
        for (i, f) in def.forms.iter().enumerate() {
            for (w, c) in ctx.poly(&free, &f.star)?.terms() {
                match w.as_slice() {
                    [j] => form_star.set(i, *j as usize, c.clone()),
                    _ => return Err(Error::Config(format!("star of {} must be linear in the forms", f.name))),
                }
            }
        }
        let mut circ = Vec::new();
        let mut pi_gens = Vec::new();
        for g in 0..big.alg.num_gens() as u32 {
            let name = big.alg.gen_name(g);
            let m = def.circ.get(name).ok_or_else(|| Error::Config(format!("circ missing for {name}")))?;
            circ.push(ctx.matrix(m)?);
            let p = def.pi.get(name).ok_or_else(|| Error::Config(format!("pi missing for {name}")))?;
            if p.len() != n {
                return Err(Error::Config(format!("pi for {name} needs {n} entries")));
            }
            pi_gens.push(p.iter().map(|x| ctx.scalar(x)).collect::<Result<Vec<_>>>()?);
        }
        if def.horizontal.len() != inst.bm.dim() || def.horizontal.iter().any(|&k| k >= n) {
            return Err(Error::Config("horizontal forms must match the frame bimodule basis".into()));
        }
        let reps = def.forms.iter().map(|f| ctx.poly(&big.alg, &f.rep)).collect::<Result<Vec<_>>>()?;
        let kernel_gens = def.kernel_gens.iter().map(|k| ctx.poly(&big.alg, k)).collect::<Result<Vec<_>>>()?;
        let coordinate_elements =
            def.coordinate_elements.iter().map(|k| ctx.poly(&big.alg, k)).collect::<Result<Vec<_>>>()?;
        Ok(Homogeneous {
            big,
            restriction,
            forms,
            form_star,
            circ,
            pi_gens,
            reps,
            horizontal: def.horizontal.clone(),
            kernel_gens,
            coordinate_elements,
        })
    }

    pub fn sigma(&self, inst: &Instance, q: &NcPoly) -> NcPoly {
        let t = self.restriction.apply(q, &[&inst.hopf.alg]);
        inst.hopf.alg.nf(&t.to_poly())
    }

    fn sigma_word(&self, inst: &Instance, w: &Word) -> NcPoly {
        self.sigma(inst, &NcPoly::word(w.clone()))
    }

    /// `π′` on a word via `π′(ag) = π′(a)∘g + ε′(a)π′(g)`.
    pub fn pi_word(&self, w: &[u32]) -> Vec<Scalar> {
        let n = self.forms.len();
        let mut v = vec![Scalar::zero(); n];
        for (k, &g) in w.iter().enumerate() {
            v = vec_circ(&v, &self.circ[g as usize]);
            let e = self.big.eps_word(&w[..k]);
            vec_add(&mut v, &self.pi_gens[g as usize], &e);
        }
        v
    }

    pub fn pi(&self, q: &NcPoly) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.forms.len()];
        for (w, c) in self.big.alg.nf(q).terms() {
            vec_add(&mut v, &self.pi_word(w), c);
        }
        v
    }

    fn circ_word(&self, w: &[u32]) -> Matrix {
        let mut m = Matrix::identity(self.forms.len());
        for &g in w {
            m = m.mul(&self.circ[g as usize]);
        }
        m
    }

    /// `π_ℒ(q)` in `hor_P`.
    pub fn pi_l(&self, inst: &Instance, q: &NcPoly) -> NcPoly {
        let v = self.pi(q);
        let mut out = NcPoly::zero();
        for (k, &h) in self.horizontal.iter().enumerate() {
            out.add_assign(&inst.hor.theta(k).scale(&v[h]));
        }
        out
    }

    fn pi_l_word(&self, inst: &Instance, w: &Word) -> NcPoly {
        self.pi_l(inst, &NcPoly::word(w.clone()))
    }

    fn perp_part(&self, v: &[Scalar]) -> Vec<(usize, Scalar)> {
        v.iter().enumerate().filter(|(k, c)| !self.horizontal.contains(k) && !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
    }

    /// `ad_*(q) = q⁽²⁾ ⊗ ς[κ′(q⁽¹⁾)q⁽³⁾]`.
    pub fn restricted_adjoint(&self, inst: &Instance, q: &NcPoly) -> Tensor {
        let ba = &self.big.alg;
        let mut out = Tensor::zero();
        for (sl, c) in self.big.sweedler(q, 3).terms() {
            let right = ba.mul(&self.big.kappa(&NcPoly::word(sl[0].clone())), &NcPoly::word(sl[2].clone()));
            let right = self.sigma(inst, &right);
            out.add_assign(&Tensor::pure(&[&NcPoly::word(sl[1].clone()), &right]).scale(c));
        }
        out.nf(&[ba, &inst.hopf.alg])
    }

    /// `Δ′(q) = π_ℒ(q⁽²⁾)π_ℒ[κ′(q⁽¹⁾)q⁽³⁾]` in `ℒ^∧`.
    pub fn delta(&self, inst: &Instance, q: &NcPoly) -> NcPoly {
        let hor = &inst.hor;
        let mut out = NcPoly::zero();
        for (sl, c) in self.big.sweedler(q, 3).terms() {
            let right = self.big.alg.mul(&self.big.kappa(&NcPoly::word(sl[0].clone())), &NcPoly::word(sl[2].clone()));
            let x = self.pi_l_word(inst, &sl[1]);
            let y = self.pi_l(inst, &right);
            out.add_assign(&hor.mul(&x, &y).scale(c));
        }
        hor.alg.nf(&out)
    }

    /// `−π_ℒ(q⁽¹⁾)π_ℒ(q⁽²⁾)`.
    pub fn curvature_formula(&self, inst: &Instance, q: &NcPoly) -> NcPoly {
        let hor = &inst.hor;
        let mut out = NcPoly::zero();
        for (sl, c) in self.big.phi(q).terms() {
            out.add_assign(&hor.mul(&self.pi_l_word(inst, &sl[0]), &self.pi_l_word(inst, &sl[1])).scale(c));
        }
        hor.alg.nf(&out.neg())
    }

    /// A generator-wise section of `ς`, applied letter by letter.
    pub fn lift(&self, inst: &Instance, a: &NcPoly) -> Result<NcPoly> {
        let ga = &inst.hopf.alg;
        let mut table = Vec::new();
        for g in 0..ga.num_gens() as u32 {
            let target = NcPoly::gen(g);
            let h = (0..self.big.alg.num_gens() as u32)
                .find(|&h| self.sigma(inst, &NcPoly::gen(h)) == target)
                .ok_or_else(|| Error::Inconsistent(format!("{} is not the image of a generator", ga.gen_name(g))))?;
            table.push(h);
        }
        let out: NcPoly = a.terms().map(|(w, c)| (w.iter().map(|&g| table[g as usize]).collect(), c.clone())).collect();
        Ok(self.big.alg.nf(&out))
    }

    /// `∇(b) = Σ_k b_k π_ℒ(q_k)` on generators of `ℬ = 𝒜′`, `∇(θ) = 0`.
    pub fn nabla(&self, inst: &Instance, calc: Option<&Calculus>) -> Result<Derivation> {
        if let Some(calc) = calc {
            let w = self.condition_d_witnesses(inst, calc)?;
            if !w.is_empty() {
                return Err(Error::Inconsistent(format!("condition (d) fails on {}", w.join(", "))));
            }
        }
        let hor = &inst.hor;
        let mut images = Vec::new();
        for g in 0..hor.nb as u32 {
            let mut img = NcPoly::zero();
            for (sl, c) in self.big.phi(&NcPoly::gen(g)).terms() {
                img.add_assign(&hor.mul(&NcPoly::word(sl[0].clone()), &self.pi_l_word(inst, &sl[1])).scale(c));
            }
            images.push(hor.alg.nf(&img));
        }
        images.extend((0..hor.nv()).map(|_| NcPoly::zero()));
        Ok(Derivation { degree: 1, images })
    }

    fn condition_d_witnesses(&self, inst: &Instance, calc: &Calculus) -> Result<Vec<String>> {
        let mut w = Vec::new();
        for r in &calc.fodc.ideal {
            let q = self.lift(inst, r)?;
            let d = self.delta(inst, &q);
            if !d.is_zero() {
                w.push(format!("{}: {}", inst.hopf.alg.fmt(r), inst.hor.alg.fmt(&d)));
            }
        }
        Ok(w)
    }

    /// Coordinate elements: `c_i` supplied, or solved from `π′(c) = e_i` on
    /// `𝒦` words of length `≤ len`.
    pub fn coordinate_elements(&self, inst: &Instance, len: usize) -> Result<Vec<NcPoly>> {
        if !self.coordinate_elements.is_empty() {
            return Ok(self.coordinate_elements.clone());
        }
        let words = self.kernel_words(len);
        let n = self.forms.len();
        let elems: Vec<NcPoly> =
            words.iter().map(|x| x.sub(&NcPoly::scalar(self.big.eps(x)))).filter(|x| !x.is_zero()).collect();
        let mut out = Vec::new();
        for (i, &h) in self.horizontal.iter().enumerate() {
            let single = elems.iter().find_map(|x| {
                let v = self.pi(x);
                let ok = v.iter().enumerate().all(|(k, c)| (k == h) != c.is_zero());
                ok.then(|| x.scale(&v[h].inv()))
            });
            if let Some(c) = single {
                out.push(self.big.alg.nf(&c));
                continue;
            }
            // augmented rows: π′(x) | unit, solve for e_h
            let rows: Vec<SparseRow> = elems
                .iter()
                .enumerate()
                .map(|(k, x)| {
                    let mut r: SparseRow = self.pi(x).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                    r.insert(n + k, Scalar::one());
                    r
                })
                .collect();
            let target: SparseRow = [(h, Scalar::one())].into_iter().collect();
            let red = crate::linalg::reduce(&rref(rows), &target);
            if red.keys().any(|&k| k < n) {
                return Err(Error::Inconsistent(format!(
                    "no coordinate element for {} among kernel words of length <= {len}",
                    inst.bm.names[i]
                )));
            }
            let mut c = NcPoly::zero();
            for (k, x) in red.iter() {
                c.add_assign(&elems[k - n].scale(&-x));
            }
            out.push(self.big.alg.nf(&c));
        }
        Ok(out)
    }

    /// Products of kernel generators of length `≤ len`.
    fn kernel_words(&self, len: usize) -> Vec<NcPoly> {
        let ba = &self.big.alg;
        let mut out = vec![NcPoly::one()];
        let mut frontier = vec![NcPoly::one()];
        for _ in 0..len {
            let mut next = Vec::new();
            for x in &frontier {
                for g in &self.kernel_gens {
                    next.push(ba.mul(x, g));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    fn in_kernel(&self, inst: &Instance, x: &NcPoly) -> bool {
        let ba = &self.big.alg;
        let lhs = self.big.phi(x).map_slot(1, |w| self.sigma_word(inst, w)).nf(&[ba, &inst.hopf.alg]);
        let rhs = Tensor::pure(&[x, &NcPoly::one()]);
        lhs.sub(&rhs).nf(&[ba, &inst.hopf.alg]).is_zero()
    }

    /// `ϰ(e)` for a form with representative `r ∈ ker ε′`: `π′(r⁽²⁾)⊗κς(r⁽¹⁾)`.
    fn kappa_form(&self, inst: &Instance, r: &NcPoly) -> Vec<(Vec<Scalar>, NcPoly)> {
        let mut out = Vec::new();
        for (sl, c) in self.big.phi(r).terms() {
            let v: Vec<Scalar> = self.pi_word(&sl[1]).iter().map(|x| x * c).collect();
            out.push((v, inst.hopf.kappa(&self.sigma_word(inst, &sl[0]))));
        }
        out
    }

    pub fn verify(&self, inst: &Instance, calc: Option<&Calculus>, slice: usize) -> Vec<Check> {
        let ba = &self.big.alg;
        let ga = &inst.hopf.alg;
        let hor = &inst.hor;
        let gens: Vec<NcPoly> = (0..ba.num_gens() as u32).map(NcPoly::gen).collect();
        let fmt = |q: &NcPoly| ba.fmt(q);
        let mut checks = Vec::new();

        let w = self.restriction.relation_residues(ba, &[ga]).into_iter().map(|(r, p)| format!("{r}: {p}")).collect();
        checks.push(Check::from_witnesses("homogeneous.restriction.homomorphism", "sigma respects the relations of A'", w));
        let algs2 = [ga, ga];
        let mut wc = Vec::new();
        let mut we = Vec::new();
        let mut wk = Vec::new();
        let mut ws = Vec::new();
        for g in &gens {
            let lhs = inst.hopf.phi(&self.sigma(inst, g));
            let rhs = self.big.phi(g).map_slot(0, |w| self.sigma_word(inst, w)).map_slot(1, |w| self.sigma_word(inst, w));
            if !lhs.sub(&rhs).nf(&algs2).is_zero() {
                wc.push(fmt(g));
            }
            if inst.hopf.eps(&self.sigma(inst, g)) != self.big.eps(g) {
                we.push(fmt(g));
            }
            if inst.hopf.kappa(&self.sigma(inst, g)) != self.sigma(inst, &self.big.kappa(g)) {
                wk.push(fmt(g));
            }
            if inst.hopf.star(&self.sigma(inst, g)) != self.sigma(inst, &self.big.star(g)) {
                ws.push(fmt(g));
            }
        }
        checks.push(Check::from_witnesses("homogeneous.restriction.coproduct", "phi sigma = (sigma (x) sigma) phi'", wc));
        checks.push(Check::from_witnesses("homogeneous.restriction.counit", "eps sigma = eps'", we));
        checks.push(Check::from_witnesses("homogeneous.restriction.antipode", "kappa sigma = sigma kappa'", wk));
        checks.push(Check::from_witnesses("homogeneous.restriction.star", "sigma(q*) = sigma(q)*", ws));
        let w = match self.lift(inst, &NcPoly::zero()) {
            Ok(_) => Vec::new(),
            Err(e) => vec![e.to_string()],
        };
        checks.push(Check::from_witnesses("homogeneous.restriction.surjective", "every generator of A is sigma of a generator", w));

        let n = self.forms.len();
        let mut w = Vec::new();
        for r in ba.rules() {
            let lhs = NcPoly::word(r.lhs.clone());
            if self.pi(&lhs) != self.pi(&r.rhs) {
                w.push(format!("pi' on {}", ba.word_to_string(&r.lhs)));
            }
            let mut m = Matrix::zeros(n, n);
            for (x, c) in r.rhs.terms() {
                m = m.add(&self.circ_word(x).scale(c));
            }
            if self.circ_word(&r.lhs) != m {
                w.push(format!("circ on {}", ba.word_to_string(&r.lhs)));
            }
        }
        for (k, rep) in self.reps.iter().enumerate() {
            let mut e = vec![Scalar::zero(); n];
            e[k] = Scalar::one();
            if !self.big.eps(rep).is_zero() || self.pi(rep) != e {
                w.push(format!("representative of {}", self.forms[k]));
            }
        }
        checks.push(Check::from_witnesses("homogeneous.pi.relations", "pi'(ab) = pi'(a) o b + eps'(a) pi'(b) is well defined", w));

        let mut w = Vec::new();
        for (h, g) in gens.iter().enumerate() {
            let sg = self.sigma(inst, g);
            let scalar = sg.terms().all(|(x, _)| x.is_empty());
            if scalar {
                let c = if sg.is_zero() { Scalar::zero() } else { sg.coeff(&[]) };
                if self.circ[h] != Matrix::identity(n).scale(&c) {
                    w.push(fmt(g));
                }
            }
            for (h2, g2) in gens.iter().enumerate().skip(h + 1) {
                if self.sigma(inst, g2) == sg && self.circ[h] != self.circ[h2] {
                    w.push(format!("{} vs {}", fmt(g), fmt(g2)));
                }
            }
        }
        checks.push(Check::from_witnesses("homogeneous.projectable", "Phi_inv o ker sigma = 0", w));

        let perp: Vec<usize> = (0..n).filter(|k| !self.horizontal.contains(k)).collect();
        let mut w = Vec::new();
        for &k in &perp {
            for (h, m) in self.circ.iter().enumerate() {
                if (0..n).any(|i| !perp.contains(&i) && !m.get(k, i).is_zero()) {
                    w.push(format!("{} o {}", self.forms[k], ba.gen_name(h as u32)));
                }
            }
            if (0..n).any(|j| !perp.contains(&j) && !self.form_star.get(k, j).is_zero()) {
                w.push(format!("{}*", self.forms[k]));
            }
            for (v, _) in self.kappa_form(inst, &self.reps[k]) {
                if v.iter().enumerate().any(|(j, c)| !perp.contains(&j) && !c.is_zero()) {
                    w.push(format!("coaction of {}", self.forms[k]));
                }
            }
        }
        checks.push(Check::from_witnesses("homogeneous.complement", "L^perp is a star-invariant covariant submodule", w));

        let kwords = self.kernel_words(slice);
        let mut rows = Vec::new();
        let mut w = Vec::new();
        for x in &kwords {
            let v = self.pi(x);
            if !self.perp_part(&v).is_empty() {
                w.push(format!("pi'({}) leaves L", fmt(x)));
            }
            rows.push(self.horizontal.iter().enumerate().filter(|(_, &h)| !v[h].is_zero()).map(|(k, &h)| (k, v[h].clone())).collect());
        }
        let rank = rref(rows).len();
        if rank < self.horizontal.len() {
            w.push(format!("rank {rank} < dim L {}", self.horizontal.len()));
        }
        checks.push(
            Check::from_witnesses("homogeneous.pi.surjective", "pi'(K) = L", w)
                .with_detail(format!("kernel words of length <= {slice}")),
        );

        let algs = [ba, ga];
        let mut samples: Vec<NcPoly> = self.kernel_gens.clone();
        samples.extend(gens.iter().cloned());
        if ba.gen_index("s").is_some() && ba.gen_index("t").is_some() {
            samples.push(ba.mul_all([&ba.gen("s"), &ba.gen("s"), &ba.gen("t")]));
        }
        let mut wa = Vec::new();
        for q in &samples {
            let t = self.restricted_adjoint(inst, q);
            let left = t.expand_slot(0, |x| self.restricted_adjoint(inst, &NcPoly::word(x.clone())));
            let right = t.expand_slot(1, |x| inst.hopf.phi(&NcPoly::word(x.clone())));
            if !left.sub(&right).nf(&[ba, ga, ga]).is_zero() {
                wa.push(format!("coassociativity on {}", fmt(q)));
            }
            let unit = t.contract_slot(1, |x| inst.hopf.eps_word(x));
            if !unit.to_poly().sub(q).is_zero() && !ba.nf(&unit.to_poly().sub(q)).is_zero() {
                wa.push(format!("counit on {}", fmt(q)));
            }
        }
        checks.push(Check::from_witnesses("homogeneous.adjoint.comodule", "ad_* is a right A-coaction", wa));
        let mut wk = Vec::new();
        for q in &self.kernel_gens {
            for (_, x) in self.restricted_adjoint(inst, q).by_last() {
                if !self.in_kernel(inst, &ba.nf(&x)) {
                    wk.push(fmt(q));
                }
            }
        }
        checks.push(Check::from_witnesses("homogeneous.adjoint.kernel", "ad_*(K) in K (x) A", wk));

        let bm = &inst.bm;
        let mut w = Vec::new();
        for q in &self.kernel_gens {
            let q0 = q.sub(&NcPoly::scalar(self.big.eps(q)));
            let v = self.pi(&q0);
            let mut lhs = Tensor::zero();
            for (k, &h) in self.horizontal.iter().enumerate() {
                for j in 0..bm.dim() {
                    let t = Tensor::pure(&[&hor.theta(j), bm.corep.entry(j, k)]).scale(&v[h]);
                    lhs.add_assign(&t);
                }
            }
            let mut rhs = Tensor::zero();
            for (v2, c) in self.kappa_form(inst, &q0) {
                if !self.perp_part(&v2).is_empty() {
                    w.push(format!("{}: leaves L", fmt(q)));
                }
                for (k, &h) in self.horizontal.iter().enumerate() {
                    rhs.add_assign(&Tensor::pure(&[&hor.theta(k), &c]).scale(&v2[h]));
                }
            }
            if !lhs.sub(&rhs).nf(&[&hor.alg, ga]).is_zero() {
                w.push(fmt(q));
            }
        }
        checks.push(Check::from_witnesses("homogeneous.coaction", "ad pi'(q) = pi'(q(2)) (x) kappa sigma(q(1)) on K", w));

        let tau = bm.braiding();
        let nv = bm.dim();
        let mut w = Vec::new();
        let to_vv = |t: &BTreeMap<(usize, usize), Scalar>| -> Vec<Scalar> {
            let mut v = vec![Scalar::zero(); nv * nv];
            for ((a, b), c) in t {
                v[a * nv + b] = &v[a * nv + b] + c;
            }
            v
        };
        for g in &gens {
            let q = g.sub(&NcPoly::scalar(self.big.eps(g)));
            let mut first = BTreeMap::new();
            let mut second = BTreeMap::new();
            for (sl, c) in self.big.phi(&q).terms() {
                let (x, y) = (self.pi_word(&sl[0]), self.pi_word(&sl[1]));
                for (a, &ha) in self.horizontal.iter().enumerate() {
                    for (b, &hb) in self.horizontal.iter().enumerate() {
                        let e: &mut Scalar = first.entry((a, b)).or_insert_with(Scalar::zero);
                        *e = &*e + &(&(&x[ha] * &y[hb]) * c);
                    }
                }
            }
            for (sl, c) in self.big.sweedler(&q, 3).terms() {
                let x = self.pi_word(&sl[1]);
                let y = self.pi(&ba.mul(&self.big.kappa(&NcPoly::word(sl[0].clone())), &NcPoly::word(sl[2].clone())));
                for (a, &ha) in self.horizontal.iter().enumerate() {
                    for (b, &hb) in self.horizontal.iter().enumerate() {
                        let e: &mut Scalar = second.entry((a, b)).or_insert_with(Scalar::zero);
                        *e = &*e + &(&(&x[ha] * &y[hb]) * c);
                    }
                }
            }
            let f = to_vv(&first);
            let sv = to_vv(&second);
            let tf: Vec<Scalar> = (0..nv * nv)
                .map(|r| (0..nv * nv).fold(Scalar::zero(), |acc, col| &acc + &(tau.get(r, col) * &f[col])))
                .collect();
            if (0..nv * nv).any(|r| tf[r] != &f[r] - &sv[r]) {
                w.push(fmt(&q));
            }
        }
        checks.push(Check::from_witnesses(
            "homogeneous.tau",
            "tau(pi_L(q(1)) (x) pi_L(q(2))) = pi_L(q(1)) (x) pi_L(q(2)) - pi_L(q(2)) (x) pi_L(kappa'(q(1))q(3))",
            w,
        ));

        checks.push(match self.nabla(inst, None) {
            Ok(d) if d.images == inst.nabla.images => Check::pass("homogeneous.nabla", "nabla(b) = sum_k b_k pi_L(q_k)"),
            Ok(d) => {
                let bad = (0..hor.nb)
                    .find(|&g| d.images[g] != inst.nabla.images[g])
                    .map(|g| format!("{}: {}", hor.alg.gen_name(g as u32), hor.alg.fmt(&d.images[g])))
                    .unwrap_or_default();
                Check::fail("homogeneous.nabla", "nabla(b) = sum_k b_k pi_L(q_k)", bad)
            }
            Err(e) => Check::fail("homogeneous.nabla", "nabla(b) = sum_k b_k pi_L(q_k)", e.to_string()),
        });

        let rho = curvature_extract(hor, &inst.pairs, &inst.nabla);
        let mut w = Vec::new();
        for word in ba.normal_words(2) {
            let q = NcPoly::word(word);
            let lhs = rho.eval(hor, &inst.pairs, &self.sigma(inst, &q));
            if !hor.alg.nf(&lhs.sub(&self.curvature_formula(inst, &q))).is_zero() {
                w.push(fmt(&q));
            }
        }
        checks.push(Check::from_witnesses("homogeneous.curvature", "rho(sigma(q)) = -pi_L(q(1)) pi_L(q(2))", w));

        if let Some(calc) = calc {
            let c = match self.condition_d_witnesses(inst, calc) {
                Ok(w) => Check::from_witnesses("homogeneous.condition_d", "Delta vanishes on the generators of R", w),
                Err(e) => Check::fail("homogeneous.condition_d", "Delta vanishes on the generators of R", e.to_string()),
            };
            checks.push(c);
            let mut w = Vec::new();
            for rep in &calc.fodc.reps {
                match self.lift(inst, rep) {
                    Ok(q) => {
                        let lhs = rho.eval(hor, &inst.pairs, rep);
                        let rhs = self.delta(inst, &q).scale(&Scalar::from_ratio(-1, 2));
                        if !hor.alg.nf(&lhs.sub(&rhs)).is_zero() {
                            w.push(ga.fmt(rep));
                        }
                    }
                    Err(e) => w.push(e.to_string()),
                }
            }
            checks.push(Check::from_witnesses("homogeneous.rho_delta", "rho(t) = -1/2 Delta(t)", w));
        }

        let c = match self.coordinate_elements(inst, slice) {
            Ok(cs) => {
                let mut w = Vec::new();
                for (i, c) in cs.iter().enumerate() {
                    if !self.big.eps(c).is_zero() {
                        w.push(format!("eps'({}) != 0", fmt(c)));
                    }
                    let mut e = vec![Scalar::zero(); n];
                    e[self.horizontal[i]] = Scalar::one();
                    if self.pi(c) != e {
                        w.push(format!("pi'({}) != {}", fmt(c), bm.names[i]));
                    }
                    let mut want = Tensor::zero();
                    for (j, cj) in cs.iter().enumerate() {
                        want.add_assign(&Tensor::pure(&[cj, bm.corep.entry(j, i)]));
                    }
                    if !self.restricted_adjoint(inst, c).sub(&want).nf(&algs).is_zero() {
                        w.push(format!("ad_*({})", fmt(c)));
                    }
                    if let Some(coords) = &inst.coords {
                        let mut s = Tensor::zero();
                        for (b, f) in coords.b.iter().zip(&coords.f) {
                            s.add_assign(&Tensor::pure(&[&b[i], &NcPoly::one()]).mul(&self.big.phi(f), &[ba, ba]));
                        }
                        let target = Tensor::pure(&[&NcPoly::one(), c]);
                        if !s.sub(&target).nf(&[ba, ba]).is_zero() {
                            w.push(format!("sum b E(f) != 1 (x) {}", fmt(c)));
                        }
                    }
                }
                Check::from_witnesses("homogeneous.coordinates", "sum_a b_ai E(f_a) = 1 (x) c_i, pi'(c_i) = theta_i", w)
            }
            Err(e) => Check::fail("homogeneous.coordinates", "sum_a b_ai E(f_a) = 1 (x) c_i, pi'(c_i) = theta_i", e.to_string()),
        };
        checks.push(c);
        checks
    }
}
