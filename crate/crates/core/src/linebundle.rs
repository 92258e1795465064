//! Quantum line bundles over `U(1)` with the `λ`-twisted frame bimodule.
//!
//! The total algebra is `ℬ = ⊕_n ℱ_n` with `ℱ_{±1}` generated over the base by
//! `ξ`, `ξ*`; the grading automorphism is `L↾ℱ_n = λⁿ`, and the frame is
//! determined by a twisted derivation `X` with `X(bq) = bX(q) + X(b)L(q)`:
//! `∇(b) = X(b)ψ + λX*L(b)ψ*`.

use std::collections::BTreeMap;

use crate::connection::curvature_extract;
use crate::error::{Error, Result};
use crate::instance::{
    load_params, BimoduleDef, BundleDef, CoordDef, Ctx, FrameDef, GenDef, GroupDef, HaarDef, Instance, InstanceDef,
    ParamDef, ParamKindDef, PairsDef, CorepDef, ChecksDef, CalculusDef, GammaGenDef,
};
use crate::ncalg::{Algebra, NcPoly};
use crate::report::Check;
use crate::sample::Sampler;
use crate::scalar::Scalar;

pub(crate) fn s(x: &str) -> String {
    x.to_string()
}

pub(crate) fn gen(name: &str, star: &str) -> GenDef {
    GenDef { name: s(name), degree: 0, star: Some(s(star)) }
}

pub(crate) fn rel(l: &str, r: &str) -> [String; 2] {
    [s(l), s(r)]
}

pub(crate) fn term(parts: &[&str]) -> Vec<String> {
    parts.iter().map(|p| s(p)).collect()
}

/// The group `U(1)`: `u` unitary, `φ(u) = u⊗u`.
pub fn u1_group() -> GroupDef {
    GroupDef {
        generators: vec![gen("u", "u*"), gen("u*", "u")],
        relations: vec![rel("u u*", "1"), rel("u* u", "1")],
        coproduct: BTreeMap::from([(s("u"), vec![term(&["1", "u", "u"])]), (s("u*"), vec![term(&["1", "u*", "u*"])])]),
        counit: BTreeMap::from([(s("u"), s("1")), (s("u*"), s("1"))]),
        antipode: BTreeMap::from([(s("u"), s("u*")), (s("u*"), s("u"))]),
        antipode_inverse: None,
        haar: HaarDef { default: Some(s("0")), values: vec![rel("1", "1")] },
        coreps: vec![
            CorepDef { name: s("u"), matrix: vec![vec![s("u")]], unitary: true },
            CorepDef { name: s("u*"), matrix: vec![vec![s("u*")]], unitary: true },
        ],
    }
}

/// `𝕍 = span{ψ, ψ*}` with `ϰ(ψ) = ψ⊗u` and `ψ∘u = λψ`, `ψ*∘u = λψ*`.
pub fn so2_bimodule(lambda: &str) -> BimoduleDef {
    let d = |x: &str| vec![vec![s(x), s("0")], vec![s("0"), s(x)]];
    BimoduleDef {
        basis: vec![
            GenDef { name: s("psi"), degree: 1, star: Some(s("psi*")) },
            GenDef { name: s("psi*"), degree: 1, star: Some(s("psi")) },
        ],
        coaction: vec![vec![s("u"), s("0")], vec![s("0"), s("u*")]],
        circ: BTreeMap::from([(s("u"), d(lambda)), (s("u*"), d(&format!("{lambda}^-1")))]),
    }
}

pub(crate) fn param(name: &str, kind: ParamKindDef, value: Option<&str>, exclude: &[&str]) -> ParamDef {
    ParamDef { name: s(name), kind, value: value.map(s), exclude: exclude.iter().map(|e| s(e)).collect() }
}

/// Which base the line bundle lives over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    /// `𝒱 = ℂ`, `γ = id`, `X(ξ) = c`.
    Point { c: Option<String> },
    /// `𝒱 = ℂ[v, v*]`, `γ(v) = μv`, `X(v) = a(μ−1)ξ*v`, `X(ξ) = a(1−λ)`.
    QuantumTorus { mu: Option<String>, a: Option<String> },
}

/// Parameters of a built-in line bundle; `None` keeps a parameter symbolic.
#[derive(Clone, Debug)]
pub struct LineSpec {
    pub name: String,
    pub lambda: Option<String>,
    pub base: Base,
}

impl LineSpec {
    pub fn point(lambda: Option<&str>, c: Option<&str>) -> Self {
        LineSpec { name: s("so2-point"), lambda: lambda.map(s), base: Base::Point { c: c.map(s) } }
    }

    pub fn quantum_torus(lambda: Option<&str>, mu: Option<&str>, a: Option<&str>) -> Self {
        LineSpec {
            name: s("quantum-torus"),
            lambda: lambda.map(s),
            base: Base::QuantumTorus { mu: mu.map(s), a: a.map(s) },
        }
    }

    fn skeleton(&self) -> InstanceDef {
        let mut params = vec![param("lambda", ParamKindDef::Real, self.lambda.as_deref(), &["0", "-1"])];
        let mut gens = Vec::new();
        let mut relations = Vec::new();
        let mut coaction = BTreeMap::new();
        let mut base = Vec::new();
        let mut pairs_coords = None;
        if let Base::QuantumTorus { mu, a } = &self.base {
            params.push(param("mu", ParamKindDef::Unitary, mu.as_deref(), &["1", "-1"]));
            params.push(param("a", ParamKindDef::Real, a.as_deref(), &["0"]));
            gens.extend([gen("v", "v*"), gen("v*", "v")]);
            relations.extend([
                rel("v v*", "1"),
                rel("v* v", "1"),
                rel("xi v", "mu v xi"),
                rel("xi v*", "mu^-1 v* xi"),
                rel("xi* v", "mu^-1 v xi*"),
                rel("xi* v*", "mu v* xi*"),
            ]);
            coaction.insert(s("v"), vec![term(&["1", "v", "1"])]);
            coaction.insert(s("v*"), vec![term(&["1", "v*", "1"])]);
            base.extend([s("v"), s("v*")]);
            let al = "1/(a (mu-1) (1-mu^2))";
            let al2 = "1/(lambda a (1-mu) (mu^-2-1))";
            pairs_coords = Some(CoordDef {
                b: vec![
                    vec![format!("{al} v* xi"), format!("{al2} xi* v*")],
                    vec![format!("{al} mu^2 xi v"), format!("{al2} mu^-2 v xi*")],
                ],
                f: vec![s("v"), s("v*")],
            });
        }
        if let Base::Point { c } = &self.base {
            params.push(param("c", ParamKindDef::Real, c.as_deref(), &["0"]));
        }
        gens.extend([gen("xi", "xi*"), gen("xi*", "xi")]);
        relations.extend([rel("xi xi*", "1"), rel("xi* xi", "1")]);
        coaction.insert(s("xi"), vec![term(&["1", "xi", "u"])]);
        coaction.insert(s("xi*"), vec![term(&["1", "xi*", "u*"])]);
        InstanceDef {
            name: self.name.clone(),
            description: match self.base {
                Base::Point { .. } => s("U(1) line bundle over a point with the lambda-twisted frame"),
                Base::QuantumTorus { .. } => s("U(1) line bundle over the quantum torus with the lambda-twisted frame"),
            },
            parameters: params,
            group: u1_group(),
            bimodule: so2_bimodule("lambda"),
            bundle: BundleDef { generators: gens, relations, coaction, base },
            frame: FrameDef {
                fields: BTreeMap::new(),
                dual_pairs: vec![
                    PairsDef { corep: s("u"), p: vec![vec![s("xi")]], q: vec![vec![s("xi*")]] },
                    PairsDef { corep: s("u*"), p: vec![vec![s("xi*")]], q: vec![vec![s("xi")]] },
                ],
                coordinates: pairs_coords,
            },
            connections: Vec::new(),
            calculus: Some(so2_calculus()),
            homogeneous: None,
            checks: ChecksDef { regular: Some(true), ..ChecksDef::default() },
        }
    }

    /// Recovers the `LineSpec` behind a line bundle definition, if `def` is one.
    pub fn recognise(def: &InstanceDef) -> Option<LineSpec> {
        let value = |n: &str| def.parameters.iter().find(|p| p.name == n).and_then(|p| p.value.as_deref());
        let spec = match def.name.as_str() {
            "so2-point" => LineSpec::point(value("lambda"), value("c")),
            "quantum-torus" => LineSpec::quantum_torus(value("lambda"), value("mu"), value("a")),
            _ => return None,
        };
        let expect = spec.definition().ok()?;
        let key = |d: &InstanceDef| serde_json::to_value((&d.parameters, &d.group, &d.bimodule, &d.bundle, &d.frame)).ok();
        (key(&expect)? == key(def)?).then_some(spec)
    }

    /// `X` on the generators that are not star partners of an earlier one.
    fn x_seeds(&self) -> Vec<(&'static str, &'static str)> {
        match self.base {
            Base::Point { .. } => vec![("xi", "c")],
            Base::QuantumTorus { .. } => vec![("v", "a (mu-1) xi* v"), ("xi", "a (1-lambda)")],
        }
    }

    /// Full definition, with the frame fields derived from `X`.
    pub fn definition(&self) -> Result<InstanceDef> {
        let mut def = self.skeleton();
        let ctx = load_params(&def.parameters)?;
        let alg = ctx.algebra("total", &def.bundle.generators, &def.bundle.relations)?;
        let tw = Twisted::new(&ctx, &alg, &self.x_seeds())?;
        for g in 0..alg.num_gens() as u32 {
            let b = NcPoly::gen(g);
            def.frame.fields.insert(s(alg.gen_name(g)), vec![alg.fmt(&tw.x(&b)), alg.fmt(&tw.x2(&b))]);
        }
        Ok(def)
    }

    pub fn build(&self) -> Result<LineBundle> {
        let def = self.definition()?;
        let inst = Instance::load(def)?;
        let tw = Twisted::new(&inst.ctx, &inst.bundle.total, &self.x_seeds())?;
        Ok(LineBundle { spec: self.clone(), inst, tw })
    }
}

/// The twisted derivation `X` on the total algebra together with `L`.
#[derive(Clone, Debug)]
pub struct Twisted {
    pub alg: Algebra,
    pub lambda: Scalar,
    /// `U(1)` charge of each generator.
    pub charges: Vec<i32>,
    /// `X` on each generator.
    pub images: Vec<NcPoly>,
}

impl Twisted {
    /// Extends seeds `X(g)` to star partners through `X(g*) = −g* X(g) L(g*)`,
    /// which is forced by `g g* = 1`.
    pub fn new(ctx: &Ctx, alg: &Algebra, seeds: &[(&str, &str)]) -> Result<Twisted> {
        let lambda = ctx.params.get("lambda").cloned().ok_or_else(|| Error::UnknownSymbol(s("lambda")))?;
        let n = alg.num_gens();
        let charges = (0..n as u32)
            .map(|g| match alg.gen_name(g) {
                "xi" => 1,
                "xi*" => -1,
                _ => 0,
            })
            .collect();
        let mut tw = Twisted { alg: alg.clone(), lambda, charges, images: vec![NcPoly::zero(); n] };
        for (name, text) in seeds {
            let g = alg.gen_index(name).ok_or_else(|| Error::UnknownSymbol(s(name)))?;
            tw.images[g as usize] = ctx.poly(alg, text)?;
        }
        for (name, _) in seeds {
            let g = alg.gen_index(name).expect("seed generator");
            let gs = alg.star(&NcPoly::gen(g));
            let terms: Vec<_> = gs.terms().collect();
            let [(w, _)] = terms.as_slice() else {
                return Err(Error::Config(format!("star of {name} must be a generator")));
            };
            let partner = w[0] as usize;
            let xg = tw.images[g as usize].clone();
            let img = alg.mul_all([&gs, &xg, &tw.l(&gs, 1)]).neg();
            tw.images[partner] = img;
        }
        Ok(tw)
    }

    pub fn charge(&self, w: &[u32]) -> i32 {
        w.iter().map(|&g| self.charges[g as usize]).sum()
    }

    /// `L^k`.
    pub fn l(&self, p: &NcPoly, k: i32) -> NcPoly {
        p.terms().map(|(w, c)| (w.clone(), c * &self.lambda.pow(k * self.charge(w)))).collect()
    }

    pub fn x(&self, p: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in self.alg.nf(p).terms() {
            for k in 0..w.len() {
                let pre = NcPoly::word(w[..k].to_vec());
                let post = &w[k + 1..];
                let lpost = NcPoly::term(post.to_vec(), self.lambda.pow(self.charge(post)));
                out.add_assign(&self.alg.mul_all([&pre, &self.images[w[k] as usize], &lpost]).scale(c));
            }
        }
        self.alg.nf(&out)
    }

    /// `X*(b) = X(b*)*`.
    pub fn xs(&self, p: &NcPoly) -> NcPoly {
        self.alg.star(&self.x(&self.alg.star(p)))
    }

    /// `X₂ = λX*L`.
    pub fn x2(&self, p: &NcPoly) -> NcPoly {
        self.xs(&self.l(p, 1)).scale(&self.lambda)
    }

    /// `[X, X*]`.
    pub fn bracket(&self, p: &NcPoly) -> NcPoly {
        self.x(&self.xs(p)).sub(&self.xs(&self.x(p)))
    }
}

/// A built line bundle: the loaded instance plus its twisted derivation.
#[derive(Clone, Debug)]
pub struct LineBundle {
    pub spec: LineSpec,
    pub inst: Instance,
    pub tw: Twisted,
}

impl LineBundle {
    fn xi(&self) -> NcPoly {
        self.inst.bundle.total.gen("xi")
    }

    fn xis(&self) -> NcPoly {
        self.inst.bundle.total.gen("xi*")
    }

    /// `γ^k(f) = ξ^k f ξ*^k` on the `ℬ` coefficients of a horizontal form.
    pub fn gamma(&self, x: &NcPoly, k: i32) -> NcPoly {
        let hor = &self.inst.hor;
        let (l, r) = if k >= 0 { (self.xi(), self.xis()) } else { (self.xis(), self.xi()) };
        let (l, r) = (hor.alg.pow(&l, k.unsigned_abs()), hor.alg.pow(&r, k.unsigned_abs()));
        let mut out = NcPoly::zero();
        for (v, b) in hor.components(x) {
            let nb = hor.alg.mul_all([&l, &b, &r]);
            out.add_assign(&hor.alg.mul(&nb, &hor.embed_v(&NcPoly::word(v))));
        }
        hor.alg.nf(&out)
    }

    /// Direct `ϱ(u^n) = −q D²(p)` for the one-dimensional corep `u^n`.
    pub fn curvature_direct(&self, n: i32) -> NcPoly {
        let hor = &self.inst.hor;
        let (p, q) = if n >= 0 { (self.xi(), self.xis()) } else { (self.xis(), self.xi()) };
        let m = n.unsigned_abs();
        let (p, q) = (hor.alg.pow(&p, m), hor.alg.pow(&q, m));
        let d2 = self.inst.nabla.apply(&hor.alg, &self.inst.nabla.apply(&hor.alg, &p));
        hor.alg.mul(&q, &d2).neg()
    }

    /// Geometric sums: `ϱ(uⁿ) = Σ_{k<n} λ^{2k}γ^{−k}ϱ(u)`,
    /// `ϱ(u^{−n}) = −Σ_{k=1}^{n} λ^{−2k}γ^{k}ϱ(u)`.
    pub fn curvature_series(&self, rho_u: &NcPoly, n: i32) -> NcPoly {
        let lam = &self.tw.lambda;
        let mut out = NcPoly::zero();
        if n >= 0 {
            for k in 0..n {
                out.add_assign(&self.gamma(rho_u, -k).scale(&lam.pow(2 * k)));
            }
        } else {
            for k in 1..=-n {
                out = out.sub(&self.gamma(rho_u, k).scale(&lam.pow(-2 * k)));
            }
        }
        self.inst.hor.alg.nf(&out)
    }

    pub fn curvature_series_check(&self, n_max: i32) -> Check {
        let hor = &self.inst.hor;
        let rho = curvature_extract(hor, &self.inst.pairs, &self.inst.nabla);
        let u = hor.hopf.alg.gen_index("u").expect("u") as usize;
        let rho_u = &rho.values[u];
        let mut w = Vec::new();
        let mut rows = Vec::new();
        for n in (-n_max..=n_max).filter(|&n| n != 0) {
            let direct = self.curvature_direct(n);
            let formula = self.curvature_series(rho_u, n);
            let res = hor.alg.nf(&direct.sub(&formula));
            rows.push(format!("rho(u^{n}) = {}", hor.alg.fmt(&direct)));
            if !res.is_zero() {
                w.push(format!("n = {n}: residual {}", hor.alg.fmt(&res)));
            }
        }
        if !self.curvature_direct(0).is_zero() {
            w.push(s("rho(1) != 0"));
        }
        Check::from_witnesses(
            "linebundle.curvature.series",
            "rho(u^n) = sum_{k<n} lambda^{2k} gamma^{-k} rho(u); rho(u^-n) = -sum_{k=1..n} lambda^{-2k} gamma^k rho(u)",
            w,
        )
        .with_detail(rows.join("; "))
    }

    /// Point base only: `ϱ(u) = −|c|²(1+λ) ψ*ψ`.
    pub fn golden_curvature_check(&self) -> Check {
        const NAME: &str = "linebundle.curvature.golden";
        const ANCHOR: &str = "rho(u) = -|c|^2 (1+lambda) psi* psi";
        let Base::Point { .. } = self.spec.base else {
            return Check::skipped(NAME, ANCHOR, "point base only");
        };
        let hor = &self.inst.hor;
        let c = self.inst.ctx.params["c"].clone();
        let lam = &self.tw.lambda;
        let coef = -(&(&c * &c.conj()) * &(&Scalar::one() + lam));
        let expect = hor.alg.nf(&hor.alg.mul(&hor.theta(1), &hor.theta(0)).scale(&coef));
        let rho = curvature_extract(hor, &self.inst.pairs, &self.inst.nabla);
        let got = &rho.values[hor.hopf.alg.gen_index("u").expect("u") as usize];
        let oracle = self.curvature_direct(1);
        let mut w = Vec::new();
        if !hor.alg.nf(&got.sub(&expect)).is_zero() {
            w.push(format!("extracted {} != {}", hor.alg.fmt(got), hor.alg.fmt(&expect)));
        }
        if !hor.alg.nf(&oracle.sub(&expect)).is_zero() {
            w.push(format!("oracle {} != {}", hor.alg.fmt(&oracle), hor.alg.fmt(&expect)));
        }
        Check::from_witnesses(NAME, ANCHOR, w)
    }

    /// Invariants of the line bundle algebra and identities derived from them.
    pub fn verify(&self, samples: usize, seed: u64) -> Vec<Check> {
        let alg = &self.inst.bundle.total;
        let hor = &self.inst.hor;
        let tw = &self.tw;
        let ngen = alg.num_gens() as u32;
        let gens: Vec<NcPoly> = (0..ngen).map(NcPoly::gen).collect();
        let fmt = |p: &NcPoly| alg.fmt(p);
        let zero = |p: &NcPoly| alg.nf(p).is_zero();
        let mut checks = Vec::new();

        let w = alg
            .rules()
            .iter()
            .filter_map(|r| {
                let d = tw.x(&NcPoly::word(r.lhs.clone())).sub(&tw.x(&r.rhs));
                (!zero(&d)).then(|| format!("{} -> {}: {}", alg.word_to_string(&r.lhs), fmt(&r.rhs), fmt(&d)))
            })
            .collect();
        checks.push(Check::from_witnesses("linebundle.x.relations", "X(lhs) = X(rhs) on every relation", w));

        let w = gens
            .iter()
            .enumerate()
            .filter_map(|(g, b)| {
                let x = tw.x(b);
                let want = tw.charges[g] - 1;
                let bad = x.terms().any(|(w, _)| tw.charge(w) != want);
                bad.then(|| format!("X({}) = {}", fmt(b), fmt(&x)))
            })
            .collect();
        checks.push(Check::from_witnesses("linebundle.x.grading", "X(F_n) in F_{n-1}", w));

        let mut sampler = Sampler::new(seed);
        let all: Vec<u32> = (0..ngen).collect();
        let pairs: Vec<(NcPoly, NcPoly)> = (0..samples)
            .map(|_| (sampler.element(alg, &all, 3, 2), sampler.element(alg, &all, 3, 2)))
            .collect();
        let gen_pairs: Vec<(NcPoly, NcPoly)> =
            gens.iter().flat_map(|a| gens.iter().map(move |b| (a.clone(), b.clone()))).collect();

        let w = pairs
            .iter()
            .filter_map(|(b, q)| {
                let lhs = tw.x(&alg.mul(b, q));
                let rhs = alg.mul(b, &tw.x(q)).add(&alg.mul(&tw.x(b), &tw.l(q, 1)));
                (!zero(&lhs.sub(&rhs))).then(|| format!("b = {}, q = {}", fmt(b), fmt(q)))
            })
            .collect();
        checks.push(Check::from_witnesses("linebundle.x.twisted_leibniz", "X(bq) = b X(q) + X(b) L(q)", w));

        let w = pairs
            .iter()
            .filter_map(|(b, _)| {
                let d = tw.l(&alg.star(b), 1).sub(&alg.star(&tw.l(b, -1)));
                (!zero(&d)).then(|| fmt(b))
            })
            .collect();
        checks.push(Check::from_witnesses("linebundle.l.star", "L(b*) = L^{-1}(b)*", w));

        let xi = self.xi();
        let xis = self.xis();
        let w = self
            .inst
            .bundle
            .base
            .iter()
            .filter_map(|(name, f)| {
                let g = alg.mul_all([&xi, f, &xis]);
                let want = match (&self.spec.base, name.as_str()) {
                    (Base::QuantumTorus { .. }, "v") => f.scale(&self.inst.ctx.params["mu"]),
                    (Base::QuantumTorus { .. }, "v*") => f.scale(&self.inst.ctx.params["mu"].inv()),
                    _ => f.clone(),
                };
                (!zero(&g.sub(&want))).then(|| format!("xi {name} xi* = {}", fmt(&g)))
            })
            .collect();
        checks.push(Check::from_witnesses("linebundle.gamma", "xi f = gamma(f) xi", w));

        let mut w = Vec::new();
        for b in &gens {
            for i in 0..2 {
                let th = hor.theta(i);
                let lhs = hor.mul(&th, b);
                let rhs = hor.mul(&tw.l(b, 1), &th);
                if !hor.alg.nf(&lhs.sub(&rhs)).is_zero() {
                    w.push(format!("theta_{i} {}", fmt(b)));
                }
            }
        }
        checks.push(Check::from_witnesses("linebundle.psi.commutation", "psi b = L(b) psi in hor_P", w));

        let w = self
            .inst
            .bundle
            .base
            .iter()
            .filter_map(|(name, f)| {
                let d = tw.bracket(f);
                (!zero(&d)).then(|| format!("[X,X*]({name}) = {}", fmt(&d)))
            })
            .collect();
        checks.push(Check::from_witnesses("linebundle.x.normal", "X X* = X* X on V", w));

        let w = gen_pairs
            .iter()
            .filter_map(|(b, q)| {
                let lhs = tw.bracket(&alg.mul(b, q));
                let rhs = alg.mul(&tw.bracket(b), &tw.l(q, 1)).add(&alg.mul(&tw.l(b, -1), &tw.bracket(q)));
                (!zero(&lhs.sub(&rhs))).then(|| format!("b = {}, q = {}", fmt(b), fmt(q)))
            })
            .collect();
        checks.push(Check::from_witnesses(
            "linebundle.derived.bracket",
            "[X,X*](bq) = [X,X*](b) L(q) + L^{-1}(b) [X,X*](q)",
            w,
        ));

        let w = gen_pairs
            .iter()
            .filter_map(|(b, q)| {
                let lhs = tw.xs(&alg.mul(b, q));
                let rhs = alg.mul(&tw.xs(b), q).add(&alg.mul(&tw.l(b, -1), &tw.xs(q)));
                (!zero(&lhs.sub(&rhs))).then(|| format!("b = {}, q = {}", fmt(b), fmt(q)))
            })
            .collect();
        checks.push(Check::from_witnesses("linebundle.derived.x_star", "X*(bq) = X*(b) q + L^{-1}(b) X*(q)", w));

        let w = pairs
            .iter()
            .filter_map(|(b, _)| {
                let d = self.inst.nabla.apply(&hor.alg, b);
                let want = hor.mul(&tw.x(b), &hor.theta(0)).add(&hor.mul(&tw.x2(b), &hor.theta(1)));
                (!hor.alg.nf(&d.sub(&want)).is_zero()).then(|| fmt(b))
            })
            .collect();
        checks.push(Check::from_witnesses(
            "linebundle.frame.formula",
            "nabla(b) = X(b) psi + lambda X* L(b) psi*",
            w,
        ));

        checks
    }
}

/// Parts of a base one-form of holomorphic (`ℱ_{−1}⊗ψ`) and antiholomorphic
/// (`ℱ_1⊗ψ*`) type.
pub fn holomorphic_split(lb: &LineBundle, x: &NcPoly) -> Result<(NcPoly, NcPoly)> {
    let hor = &lb.inst.hor;
    if !hor.is_invariant(x) {
        return Err(Error::Inconsistent(format!("{} is not F^-invariant", hor.alg.fmt(x))));
    }
    if hor.degree(x).is_some_and(|d| d != 1) {
        return Err(Error::Inconsistent(format!("{} is not a one-form", hor.alg.fmt(x))));
    }
    let (mut plus, mut minus) = (NcPoly::zero(), NcPoly::zero());
    for (v, b) in hor.components(x) {
        let form = hor.mul(&b, &hor.embed_v(&NcPoly::word(v.clone())));
        match v.as_slice() {
            [0] => plus.add_assign(&form),
            [1] => minus.add_assign(&form),
            _ => return Err(Error::Inconsistent(format!("{} is not a one-form", hor.alg.fmt(x)))),
        }
    }
    Ok((plus, minus))
}

/// The minimal calculus of the `λ`-twisted line bundle frame on `U(1)`:
/// `ℛ = ⟨1 + λ² − u − λ²u*⟩` with `ϑ = π(u − 1)`.
pub fn so2_calculus() -> CalculusDef {
    let s = |x: &str| x.to_string();
    CalculusDef {
        ideal: vec![s("1 + lambda^2 - u - lambda^2 u*")],
        slice: 4,
        basis: vec![GammaGenDef { name: s("vt"), rep: s("u - 1"), star: s("-vt") }],
        relations: vec![[s("vt vt"), s("0")]],
        d_wedge: BTreeMap::from([(s("vt"), s("0"))]),
        delta: BTreeMap::from([(s("vt"), vec![vec![s("-1"), s("vt"), s("vt")]])]),
        minimal: true,
    }
}
