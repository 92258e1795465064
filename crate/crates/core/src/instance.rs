//! Bundle definition files: the JSON schema and its loader.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bimodule::Bimodule;
use crate::connection::{extend_derivation, CoordData, CorepPairs, CovMap, DualPairs};
use crate::error::{Error, Result};
use crate::hopf::{Corep, Haar, Hopf};
use crate::horizontal::{Bundle, Hor};
use crate::linalg::Matrix;
use crate::ncalg::{parse_expr, Algebra, Derivation, GenMap, Generator, NcPoly, Rule, Tensor};
use crate::sample::Sampler;
use crate::scalar::{intern_param, ParamKind, Scalar};

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDef {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    #[serde(default)]
    pub parameters: Vec<ParamDef>,
    pub group: GroupDef,
    pub bimodule: BimoduleDef,
    pub bundle: BundleDef,
    pub frame: FrameDef,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub connections: Vec<ConnectionDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub calculus: Option<CalculusDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homogeneous: Option<HomogeneousDef>,
    #[serde(default)]
    pub checks: ChecksDef,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKindDef {
    #[default]
    Real,
    Unitary,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamDef {
    pub name: String,
    #[serde(default)]
    pub kind: ParamKindDef,
    /// A numeric value; absent means the parameter stays symbolic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exclude: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenDef {
    pub name: String,
    #[serde(default, skip_serializing_if = "is_zero_i32")]
    pub degree: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<String>,
}

fn is_zero_i32(x: &i32) -> bool {
    *x == 0
}

/// A sum of pure tensors; each term is `[coefficient, slot₁, slot₂, …]`.
pub type TensorDef = Vec<Vec<String>>;

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDef {
    pub generators: Vec<GenDef>,
    /// `[word, replacement]`.
    pub relations: Vec<[String; 2]>,
    pub coproduct: BTreeMap<String, TensorDef>,
    pub counit: BTreeMap<String, String>,
    pub antipode: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode_inverse: Option<BTreeMap<String, String>>,
    pub haar: HaarDef,
    pub coreps: Vec<CorepDef>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HaarDef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default: Option<String>,
    /// `[word, value]`.
    pub values: Vec<[String; 2]>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorepDef {
    pub name: String,
    pub matrix: Vec<Vec<String>>,
    #[serde(default)]
    pub unitary: bool,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDef {
    /// Basis of `𝕍`; `star` is a linear expression in the basis.
    pub basis: Vec<GenDef>,
    /// `coaction[j][i] = u_ji` with `ϰ(θ_i) = Σ_j θ_j⊗u_ji`.
    pub coaction: Vec<Vec<String>>,
    /// Per group generator `g`: `circ[g][j][i]` with `θ_j∘g = Σ_i circ[g][j][i] θ_i`.
    pub circ: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDef {
    pub generators: Vec<GenDef>,
    pub relations: Vec<[String; 2]>,
    pub coaction: BTreeMap<String, TensorDef>,
    /// Generators of the base algebra, as expressions in the total algebra.
    #[serde(default)]
    pub base: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDef {
    /// Per total-algebra generator: `X_i(g)` for each basis element `θ_i`.
    pub fields: BTreeMap<String, Vec<String>>,
    pub dual_pairs: Vec<PairsDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<CoordDef>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairsDef {
    pub corep: String,
    /// `p[α][j]`.
    pub p: Vec<Vec<String>>,
    /// `q[α][i]`.
    pub q: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordDef {
    pub b: Vec<Vec<String>>,
    pub f: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionDef {
    pub name: String,
    /// Group generator → value in `hor_P`.
    pub chi: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalculusDef {
    /// Generators of the right ideal, in the group algebra.
    pub ideal: Vec<String>,
    /// Word-length bound of the finite slice used for the quotient.
    #[serde(default = "default_slice")]
    pub slice: usize,
    /// Basis of the left-invariant forms: name and representative in `ker ε`.
    pub basis: Vec<GammaGenDef>,
    /// Relations of the higher-order calculus on the basis.
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
    /// `d^∧` on the basis.
    #[serde(default)]
    pub d_wedge: BTreeMap<String, String>,
    /// `δ` on the basis, as two-slot tensors.
    #[serde(default)]
    pub delta: BTreeMap<String, TensorDef>,
    /// Whether `ℛ` is claimed to be the largest ideal annihilated by the curvature.
    #[serde(default = "default_true")]
    pub minimal: bool,
}

fn default_true() -> bool {
    true
}

fn default_slice() -> usize {
    4
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaGenDef {
    pub name: String,
    pub rep: String,
    pub star: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomogeneousDef {
    /// The larger group `H`; its algebra is the total algebra.
    pub big: GroupDef,
    /// `ς` on generators of `H`.
    pub restriction: BTreeMap<String, String>,
    /// Basis of `Φ_inv`: names, `π′` representatives and star.
    pub forms: Vec<GammaGenDef>,
    /// Right module structure of `Φ_inv`: per generator of `H`, matrix `[j][i]`.
    pub circ: BTreeMap<String, Vec<Vec<String>>>,
    /// `π′` on generators of `H` in the form basis.
    pub pi: BTreeMap<String, Vec<String>>,
    /// Indices (into `forms`) spanning `ℒ`; the rest span `ℒ^⊥`.
    pub horizontal: Vec<usize>,
    /// Generators of the kernel ideal `𝒦 = ker ε′ ∩ …` used for the checks.
    pub kernel_gens: Vec<String>,
    /// Coordinate elements `c_i` (optional; solved otherwise).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coordinate_elements: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChecksDef {
    pub bound: usize,
    pub samples: usize,
    pub seed: u64,
    pub sample_len: usize,
    pub group_len: usize,
    pub confluence_len: usize,
    pub series: usize,
    /// Expected outcome of the regularity suite: `true` when `𝒳 = {0}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular: Option<bool>,
}

impl Default for ChecksDef {
    fn default() -> Self {
        ChecksDef { bound: 3, samples: 100, seed: 1, sample_len: 3, group_len: 3, confluence_len: 6, series: 4, regular: None }
    }
}

/// Expression parsing against the declared parameters.
#[derive(Clone, Debug, Default)]
pub struct Ctx {
    pub params: BTreeMap<String, Scalar>,
}

impl Ctx {
    pub fn poly(&self, alg: &Algebra, text: &str) -> Result<NcPoly> {
        parse_expr(alg, &self.params, text)
    }

    pub fn scalar(&self, text: &str) -> Result<Scalar> {
        let empty = Algebra::new("scalars", Vec::new(), Vec::new())?;
        let p = self.poly(&empty, text)?;
        p.as_scalar().ok_or_else(|| Error::Config(format!("`{text}` is not a scalar")))
    }

    pub fn tensor(&self, algs: &[&Algebra], def: &TensorDef) -> Result<Tensor> {
        let mut t = Tensor::zero();
        for term in def {
            if term.len() != algs.len() + 1 {
                return Err(Error::Config(format!("tensor term {term:?} needs {} slots", algs.len())));
            }
            let c = self.scalar(&term[0])?;
            let slots = term[1..].iter().zip(algs).map(|(s, a)| self.poly(a, s)).collect::<Result<Vec<_>>>()?;
            let refs: Vec<&NcPoly> = slots.iter().collect();
            t.add_assign(&Tensor::pure(&refs).scale(&c));
        }
        Ok(t.nf(algs))
    }

    pub fn word(&self, alg: &Algebra, text: &str) -> Result<Vec<u32>> {
        let empty = Algebra::new(alg.name.clone(), alg.generators().to_vec(), Vec::new())?;
        let p = self.poly(&empty, text)?;
        let mut it = p.terms();
        match (it.next(), it.next()) {
            (Some((w, c)), None) if c.is_one() => Ok(w.clone()),
            _ => Err(Error::Config(format!("`{text}` is not a single word"))),
        }
    }

    /// Builds a presented algebra from generator and relation definitions.
    pub fn algebra(&self, name: &str, gens: &[GenDef], relations: &[[String; 2]]) -> Result<Algebra> {
        let bare: Vec<Generator> =
            gens.iter().map(|g| Generator { name: g.name.clone(), degree: g.degree, star: None }).collect();
        let free = Algebra::new(name, bare.clone(), Vec::new())?;
        let mut full = bare;
        for (g, d) in full.iter_mut().zip(gens) {
            if let Some(s) = &d.star {
                g.star = Some(self.poly(&free, s)?);
            }
        }
        let mut rules = Vec::new();
        for [l, r] in relations {
            rules.push(Rule { lhs: self.word(&free, l)?, rhs: self.poly(&free, r)? });
        }
        Algebra::new(name, full, rules)
    }

    fn gen_images(&self, src: &Algebra, map: &BTreeMap<String, String>, algs: &[&Algebra], what: &str) -> Result<Vec<Tensor>> {
        (0..src.num_gens() as u32)
            .map(|g| {
                let name = src.gen_name(g);
                let text = map.get(name).ok_or_else(|| Error::Config(format!("{what} missing for generator {name}")))?;
                let t = if algs.is_empty() {
                    Tensor::unit(0).scale(&self.scalar(text)?)
                } else {
                    let p = self.poly(algs[0], text)?;
                    p.terms().map(|(w, c)| (vec![w.clone()], c.clone())).collect()
                };
                Ok(t)
            })
            .collect()
    }

    pub fn hopf(&self, name: &str, def: &GroupDef) -> Result<Hopf> {
        let alg = self.algebra(name, &def.generators, &def.relations)?;
        let mut coproduct = Vec::new();
        for g in 0..alg.num_gens() as u32 {
            let n = alg.gen_name(g);
            let t = def.coproduct.get(n).ok_or_else(|| Error::Config(format!("coproduct missing for {n}")))?;
            coproduct.push(self.tensor(&[&alg, &alg], t)?);
        }
        let counit = GenMap::new(self.gen_images(&alg, &def.counit, &[], "counit")?);
        let antipode = GenMap::anti(self.gen_images(&alg, &def.antipode, &[&alg], "antipode")?);
        let antipode_inv = match &def.antipode_inverse {
            Some(m) => Some(GenMap::anti(self.gen_images(&alg, m, &[&alg], "inverse antipode")?)),
            None => None,
        };
        let mut values = BTreeMap::new();
        for [w, v] in &def.haar.values {
            let word = alg.nf(&NcPoly::word(self.word(&alg, w)?));
            let (nw, c) = word.terms().next().map(|(a, b)| (a.clone(), b.clone())).unwrap_or_default();
            values.insert(nw, &self.scalar(v)? * &c.inv());
        }
        let haar = Haar { values, default: def.haar.default.as_deref().map(|d| self.scalar(d)).transpose()? };
        let mut coreps = Vec::new();
        for c in &def.coreps {
            let entries = c
                .matrix
                .iter()
                .map(|row| row.iter().map(|e| self.poly(&alg, e)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            coreps.push(Corep { name: c.name.clone(), entries, unitary: c.unitary });
        }
        Ok(Hopf { alg, coproduct: GenMap::new(coproduct), counit, antipode, antipode_inv, haar, coreps })
    }

    pub fn matrix(&self, rows: &[Vec<String>]) -> Result<Matrix> {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        let mut out = Matrix::zeros(n, m);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Config("ragged matrix".into()));
            }
            for (j, e) in row.iter().enumerate() {
                out.set(i, j, self.scalar(e)?);
            }
        }
        Ok(out)
    }
}

/// A loaded instance with every structure built.
#[derive(Clone, Debug)]
pub struct Instance {
    pub def: InstanceDef,
    pub ctx: Ctx,
    pub hopf: Hopf,
    pub bm: Bimodule,
    pub bundle: Bundle,
    pub hor: Hor,
    pub fields: Vec<Vec<NcPoly>>,
    pub nabla: Derivation,
    pub pairs: DualPairs,
    pub coords: Option<CoordData>,
    pub connections: Vec<(String, CovMap)>,
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Instance> {
        let def: InstanceDef = serde_json::from_str(text).map_err(|e| Error::Parse {
            column: e.column(),
            message: format!("line {}: {e}", e.line()),
        })?;
        Instance::load(def)
    }

    pub fn load(def: InstanceDef) -> Result<Instance> {
        let ctx = load_params(&def.parameters)?;
        let hopf = ctx.hopf(&format!("{}:group", def.name), &def.group)?;
        let bm = load_bimodule(&ctx, &hopf, &def.bimodule)?;
        let total = ctx.algebra(&format!("{}:total", def.name), &def.bundle.generators, &def.bundle.relations)?;
        let mut images = Vec::new();
        for g in 0..total.num_gens() as u32 {
            let n = total.gen_name(g);
            let t = def.bundle.coaction.get(n).ok_or_else(|| Error::Config(format!("coaction missing for {n}")))?;
            images.push(ctx.tensor(&[&total, &hopf.alg], t)?);
        }
        let base = def
            .bundle
            .base
            .iter()
            .map(|s| Ok((s.clone(), ctx.poly(&total, s)?)))
            .collect::<Result<Vec<_>>>()?;
        let bundle = Bundle { hopf: hopf.clone(), total, coaction: GenMap::new(images), base };
        let ext = bm.exterior()?;
        let hor = Hor::new(&bundle, &bm, ext)?;
        let mut fields = Vec::new();
        for g in 0..hor.nb as u32 {
            let n = bundle.total.gen_name(g);
            let row = def.frame.fields.get(n).ok_or_else(|| Error::Config(format!("frame fields missing for {n}")))?;
            if row.len() != bm.dim() {
                return Err(Error::Config(format!("frame fields for {n} need {} entries", bm.dim())));
            }
            fields.push(row.iter().map(|e| ctx.poly(&hor.alg, e)).collect::<Result<Vec<_>>>()?);
        }
        let nabla = extend_derivation(&hor, &fields, &vec![NcPoly::zero(); bm.dim()]);
        let mut families = Vec::new();
        for p in &def.frame.dual_pairs {
            let corep = hopf
                .coreps
                .iter()
                .position(|c| c.name == p.corep)
                .ok_or_else(|| Error::UnknownSymbol(p.corep.clone()))?;
            let parse = |m: &Vec<Vec<String>>| {
                m.iter().map(|row| row.iter().map(|e| ctx.poly(&hor.alg, e)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()
            };
            families.push(CorepPairs { corep, p: parse(&p.p)?, q: parse(&p.q)? });
        }
        let pairs = DualPairs::new(&hor, families)?;
        let coords = match &def.frame.coordinates {
            Some(c) => Some(CoordData {
                b: c.b.iter().map(|row| row.iter().map(|e| ctx.poly(&hor.alg, e)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?,
                f: c.f.iter().map(|e| ctx.poly(&hor.alg, e)).collect::<Result<_>>()?,
            }),
            None => None,
        };
        let mut connections = Vec::new();
        for c in &def.connections {
            let mut m = CovMap::zero(1, hopf.alg.num_gens());
            for (name, text) in &c.chi {
                let g = hopf.alg.gen_index(name).ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                m.values[g as usize] = ctx.poly(&hor.alg, text)?;
            }
            connections.push((c.name.clone(), m));
        }
        Ok(Instance { def, ctx, hopf, bm, bundle, hor, fields, nabla, pairs, coords, connections })
    }

    pub fn name(&self) -> &str {
        &self.def.name
    }

    pub fn connection(&self, name: &str) -> Option<&CovMap> {
        self.connections.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    /// Seeded random homogeneous elements of `hor_P`.
    pub fn samples(&self, count: usize, seed: u64) -> Vec<NcPoly> {
        let mut s = Sampler::new(seed);
        let gens: Vec<u32> = (0..self.hor.alg.num_gens() as u32).collect();
        (0..count).map(|_| s.homogeneous(&self.hor.alg, &gens, self.def.checks.sample_len, 3)).collect()
    }

    /// Seeded random elements of the total algebra.
    pub fn total_samples(&self, count: usize, seed: u64) -> Vec<NcPoly> {
        let mut s = Sampler::new(seed ^ 0x5eed);
        let gens: Vec<u32> = (0..self.hor.nb as u32).collect();
        (0..count).map(|_| s.element(&self.bundle.total, &gens, self.def.checks.sample_len, 3)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.def).expect("definition serializes")
    }
}

pub fn load_params(defs: &[ParamDef]) -> Result<Ctx> {
    let mut ctx = Ctx::default();
    for p in defs {
        let value = match &p.value {
            Some(v) => {
                let x = ctx.scalar(v)?;
                for e in &p.exclude {
                    if ctx.scalar(e)? == x {
                        return Err(Error::ExcludedParameter { name: p.name.clone(), value: v.clone() });
                    }
                }
                x
            }
            None => {
                let kind = match p.kind {
                    ParamKindDef::Real => ParamKind::Real,
                    ParamKindDef::Unitary => ParamKind::Unitary,
                };
                Scalar::param(intern_param(&p.name, kind).map_err(Error::Config)?)
            }
        };
        ctx.params.insert(p.name.clone(), value);
    }
    Ok(ctx)
}

fn load_bimodule(ctx: &Ctx, hopf: &Hopf, def: &BimoduleDef) -> Result<Bimodule> {
    let n = def.basis.len();
    let names: Vec<String> = def.basis.iter().map(|g| g.name.clone()).collect();
    let free = Algebra::new(
        "basis",
        names.iter().map(|n| Generator { name: n.clone(), degree: 1, star: None }).collect(),
        Vec::new(),
    )?;
    let mut star = Matrix::zeros(n, n);
    for (i, g) in def.basis.iter().enumerate() {
        let text = g.star.as_ref().ok_or_else(|| Error::Config(format!("star missing for {}", g.name)))?;
        for (w, c) in ctx.poly(&free, text)?.terms() {
            if w.len() != 1 {
                return Err(Error::Config(format!("star of {} must be linear in the basis", g.name)));
            }
            star.set(i, w[0] as usize, c.clone());
        }
    }
    if def.coaction.len() != n {
        return Err(Error::Config("coaction matrix has the wrong size".into()));
    }
    let entries = def
        .coaction
        .iter()
        .map(|row| row.iter().map(|e| ctx.poly(&hopf.alg, e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut circ = Vec::new();
    for g in 0..hopf.alg.num_gens() as u32 {
        let name = hopf.alg.gen_name(g);
        let m = def.circ.get(name).ok_or_else(|| Error::Config(format!("circ missing for {name}")))?;
        let m = ctx.matrix(m)?;
        if m.rows != n || m.cols != n {
            return Err(Error::Config(format!("circ matrix for {name} has the wrong size")));
        }
        circ.push(m);
    }
    Ok(Bimodule { names, corep: Corep { name: "V".into(), entries, unitary: true }, circ, star })
}
