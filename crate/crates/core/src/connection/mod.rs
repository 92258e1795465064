//! Covariant derivatives on `hor_P`: frame structures, curvature `ϱ_D`,
//! vertical maps `χ_E` and their identities.

mod regularity;

pub use regularity::{regularity_space, RegularityOptions, RegularitySpace};

use crate::error::{Error, Result};
use crate::horizontal::{Bundle, Hor};
use crate::ncalg::{Derivation, NcPoly, Tensor, Word};
use crate::report::Check;
use crate::scalar::Scalar;

/// Dual pairs for one matrix corepresentation `T` of the group:
/// `F(p_αj) = Σ_k p_αk⊗T_kj` and `Σ_α q_αi p_αj = δ_ij`.
#[derive(Clone, Debug)]
pub struct CorepPairs {
    pub corep: usize,
    /// `p[α][j]`.
    pub p: Vec<Vec<NcPoly>>,
    /// `q[α][i]`.
    pub q: Vec<Vec<NcPoly>>,
}

#[derive(Clone, Debug)]
pub struct DualPairs {
    pub families: Vec<CorepPairs>,
    /// Group generator → (family, i, j) with the generator equal to `T_ij`.
    index: Vec<(usize, usize, usize)>,
}

impl DualPairs {
    pub fn new(hor: &Hor, families: Vec<CorepPairs>) -> Result<DualPairs> {
        let hopf = &hor.hopf;
        let mut index = Vec::new();
        for g in 0..hopf.alg.num_gens() as u32 {
            let target = NcPoly::gen(g);
            let found = families.iter().enumerate().find_map(|(f, fam)| {
                let r = &hopf.coreps[fam.corep];
                (0..r.dim()).find_map(|i| (0..r.dim()).find(|&j| r.entry(i, j) == &target).map(|j| (f, i, j)))
            });
            match found {
                Some(x) => index.push(x),
                None => {
                    return Err(Error::Config(format!(
                        "group generator {} is not an entry of a corepresentation with dual pairs",
                        hopf.alg.gen_name(g)
                    )))
                }
            }
        }
        Ok(DualPairs { families, index })
    }

    pub fn lookup(&self, g: u32) -> (usize, usize, usize) {
        self.index[g as usize]
    }

    pub fn verify(&self, bundle: &Bundle) -> Vec<Check> {
        let b = &bundle.total;
        let a = &bundle.hopf.alg;
        let mut cov = Vec::new();
        let mut dual = Vec::new();
        for fam in &self.families {
            let r = &bundle.hopf.coreps[fam.corep];
            let n = r.dim();
            for (alpha, row) in fam.p.iter().enumerate() {
                for j in 0..n {
                    let mut expect = Tensor::zero();
                    for k in 0..n {
                        expect.add_assign(&Tensor::pure(&[&row[k], r.entry(k, j)]));
                    }
                    if !bundle.f(&row[j]).sub(&expect.nf(&[b, a])).is_zero() {
                        cov.push(format!("{}: p[{}][{}]", r.name, alpha + 1, j + 1));
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let mut s = NcPoly::zero();
                    for (q, p) in fam.q.iter().zip(&fam.p) {
                        s.add_assign(&b.mul(&q[i], &p[j]));
                    }
                    if i == j {
                        s = s.sub(&NcPoly::one());
                    }
                    if !b.nf(&s).is_zero() {
                        dual.push(format!("{}: ({}, {})", r.name, i + 1, j + 1));
                    }
                }
            }
        }
        vec![
            Check::from_witnesses("pairs.covariant", "F(p_aj) = sum_k p_ak (x) T_kj", cov),
            Check::from_witnesses("pairs.dual", "sum_a q_ai p_aj = delta_ij", dual),
        ]
    }
}

/// Coordinate data `1⊗θ_i = Σ_α b_αi ∇(f_α)` with `F(b_αi) = Σ_j b_αj⊗u_ji`.
#[derive(Clone, Debug)]
pub struct CoordData {
    /// `b[α][i]`.
    pub b: Vec<Vec<NcPoly>>,
    pub f: Vec<NcPoly>,
}

/// A map on the group determined by its values on generators and the
/// recursion `m(aT_ij) = Σ_α q_αi m(a) p_αj + ε(a) m(T_ij)`, `m(1) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CovMap {
    pub degree: i32,
    pub values: Vec<NcPoly>,
}

impl CovMap {
    pub fn zero(degree: i32, n: usize) -> Self {
        CovMap { degree, values: vec![NcPoly::zero(); n] }
    }

    pub fn eval_word(&self, hor: &Hor, pairs: &DualPairs, w: &[u32]) -> NcPoly {
        let Some((&g, prefix)) = w.split_last() else {
            return NcPoly::zero();
        };
        let (f, i, j) = pairs.lookup(g);
        let fam = &pairs.families[f];
        let inner = self.eval_word(hor, pairs, prefix);
        let mut out = self.values[g as usize].scale(&hor.hopf.eps_word(prefix));
        if !inner.is_zero() {
            for (q, p) in fam.q.iter().zip(&fam.p) {
                out.add_assign(&hor.alg.mul_all([&q[i], &inner, &p[j]]));
            }
        }
        hor.alg.nf(&out)
    }

    pub fn eval(&self, hor: &Hor, pairs: &DualPairs, a: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in hor.hopf.alg.nf(a).terms() {
            out.add_assign(&self.eval_word(hor, pairs, w).scale(c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(NcPoly::is_zero)
    }

    pub fn add(&self, o: &CovMap) -> CovMap {
        CovMap { degree: self.degree, values: self.values.iter().zip(&o.values).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> CovMap {
        CovMap { degree: self.degree, values: self.values.iter().map(|a| a.scale(c)).collect() }
    }
}

/// `∇(g) = Σ_i X_i(g) θ_i` on `ℬ` generators, with given images of the `θ_i`.
pub fn extend_derivation(hor: &Hor, fields: &[Vec<NcPoly>], theta: &[NcPoly]) -> Derivation {
    let mut images = Vec::new();
    for row in fields.iter().take(hor.nb) {
        let mut img = NcPoly::zero();
        for (i, x) in row.iter().enumerate() {
            img.add_assign(&hor.alg.mul(x, &hor.theta(i)));
        }
        images.push(img);
    }
    images.extend(theta.iter().map(|t| hor.alg.nf(t)));
    Derivation { degree: 1, images }
}

/// Coordinate fields `X_i(g)` read off a first-order derivation.
pub fn fields_of(hor: &Hor, d: &Derivation) -> Vec<Vec<NcPoly>> {
    (0..hor.nb)
        .map(|g| {
            let comps = hor.components(&d.images[g]);
            (0..hor.nv())
                .map(|i| comps.iter().find(|(w, _)| w == &vec![i as u32]).map(|(_, b)| b.clone()).unwrap_or_default())
                .collect()
        })
        .collect()
}

/// `D²`.
pub fn d_squared(hor: &Hor, d: &Derivation, x: &NcPoly) -> NcPoly {
    d.apply(&hor.alg, &d.apply(&hor.alg, x))
}

fn hor_targets(hor: &Hor) -> [&crate::ncalg::Algebra; 2] {
    [&hor.alg, &hor.hopf.alg]
}

fn generators(hor: &Hor) -> Vec<NcPoly> {
    (0..hor.alg.num_gens() as u32).map(NcPoly::gen).collect()
}

/// Witnesses for `D(x*) ≠ D(x)*` among `elems`.
pub fn hermitian_witnesses(hor: &Hor, d: &Derivation, elems: &[NcPoly]) -> Vec<String> {
    elems
        .iter()
        .filter(|x| {
            let lhs = d.apply(&hor.alg, &hor.star(x));
            let rhs = hor.star(&d.apply(&hor.alg, x));
            !hor.alg.nf(&lhs.sub(&rhs)).is_zero()
        })
        .map(|x| hor.alg.fmt(x))
        .collect()
}

/// Witnesses for `F^∧D ≠ (D⊗id)F^∧` among `elems`.
pub fn covariance_witnesses(hor: &Hor, d: &Derivation, elems: &[NcPoly]) -> Vec<String> {
    let t = hor_targets(hor);
    elems
        .iter()
        .filter(|x| {
            let lhs = hor.f_wedge(&d.apply(&hor.alg, x));
            let rhs = hor.f_wedge(x).map_slot(0, |w| d.apply(&hor.alg, &NcPoly::word(w.clone()))).nf(&t);
            !lhs.sub(&rhs).is_zero()
        })
        .map(|x| hor.alg.fmt(x))
        .collect()
}

fn residue_witnesses(hor: &Hor, d: &Derivation) -> Vec<String> {
    d.relation_residues(&hor.alg).into_iter().map(|(r, p)| format!("{r}: {}", hor.alg.fmt(&p))).collect()
}

/// Definition-level checks of a frame structure.
pub fn verify_frame(
    bundle: &Bundle,
    hor: &Hor,
    nabla: &Derivation,
    coords: Option<&CoordData>,
    samples: &[NcPoly],
) -> Vec<Check> {
    let mut elems = generators(hor);
    elems.extend(samples.iter().map(|s| hor.alg.nf(s)));
    let mut checks = vec![
        Check::from_witnesses(
            "frame.antiderivation",
            "nabla(xy) = nabla(x)y + (-1)^{|x|} x nabla(y) respects the relations of hor_P",
            residue_witnesses(hor, nabla),
        ),
        Check::from_witnesses("frame.hermitian", "nabla(x*) = nabla(x)*", hermitian_witnesses(hor, nabla, &elems)),
        Check::from_witnesses("frame.covariant", "F^ nabla = (nabla (x) id)F^", covariance_witnesses(hor, nabla, &elems)),
    ];
    let w = (0..hor.nv())
        .filter(|&i| !nabla.apply(&hor.alg, &hor.theta(i)).is_zero())
        .map(|i| hor.bm.names[i].clone())
        .collect();
    checks.push(Check::from_witnesses("frame.lc.theta", "nabla(theta_i) = 0", w));
    let w = bundle
        .base
        .iter()
        .filter(|(_, f)| !d_squared(hor, nabla, f).is_zero())
        .map(|(n, _)| n.clone())
        .collect();
    checks.push(Check::from_witnesses("frame.lc.base", "nabla(nabla(f)) = 0 for base generators f", w));
    checks.push(coordinate_check(bundle, hor, nabla, coords));
    checks
}

/// `1⊗θ_i = Σ_α b_αi ∇(f_α)`, `F(b_αi) = Σ_j b_αj⊗u_ji`, `f_α ∈ 𝒱`.
pub fn coordinate_check(bundle: &Bundle, hor: &Hor, nabla: &Derivation, coords: Option<&CoordData>) -> Check {
    const NAME: &str = "frame.coordinates";
    const ANCHOR: &str = "1 (x) theta_i = sum_a b_ai nabla(f_a), F(b_ai) = sum_j b_aj (x) u_ji, f_a in V";
    let Some(c) = coords else {
        return Check::fail(NAME, ANCHOR, "no coordinate data: nabla(V) spans no theta_i");
    };
    let n = hor.nv();
    let mut w = Vec::new();
    for (alpha, f) in c.f.iter().enumerate() {
        if !bundle.is_fixed(f) {
            w.push(format!("f[{}] = {} is not in V", alpha + 1, bundle.total.fmt(f)));
        }
    }
    let targets = [&bundle.total, &bundle.hopf.alg];
    for (alpha, row) in c.b.iter().enumerate() {
        for i in 0..n {
            let mut expect = Tensor::zero();
            for (j, bj) in row.iter().enumerate() {
                expect.add_assign(&Tensor::pure(&[bj, hor.bm.corep.entry(j, i)]));
            }
            if !bundle.f(&row[i]).sub(&expect.nf(&targets)).is_zero() {
                w.push(format!("F(b[{}][{}])", alpha + 1, i + 1));
            }
        }
    }
    for i in 0..n {
        let mut s = hor.theta(i).neg();
        for (row, f) in c.b.iter().zip(&c.f) {
            s.add_assign(&hor.alg.mul(&row[i], &nabla.apply(&hor.alg, f)));
        }
        let s = hor.alg.nf(&s);
        if !s.is_zero() {
            w.push(format!("{}: residual {}", hor.bm.names[i], hor.alg.fmt(&s)));
        }
    }
    Check::from_witnesses(NAME, ANCHOR, w)
}

/// `ϱ_D(T_ij) = −Σ_α q_αi D²(p_αj)`.
pub fn curvature_extract(hor: &Hor, pairs: &DualPairs, d: &Derivation) -> CovMap {
    let values = (0..hor.hopf.alg.num_gens() as u32)
        .map(|g| {
            let (f, i, j) = pairs.lookup(g);
            let fam = &pairs.families[f];
            let mut s = NcPoly::zero();
            for (q, p) in fam.q.iter().zip(&fam.p) {
                s.add_assign(&hor.alg.mul(&q[i], &d_squared(hor, d, &p[j])));
            }
            hor.alg.nf(&s.neg())
        })
        .collect();
    CovMap { degree: 2, values }
}

/// `χ(T_ij) = −Σ_α q_αi E(p_αj)` for `E = D − frame`; requires `E(𝒱) = 0`.
pub fn chi_extract(bundle: &Bundle, hor: &Hor, pairs: &DualPairs, d: &Derivation, frame: &Derivation) -> Result<CovMap> {
    let e = d.sub(frame);
    for (name, v) in &bundle.base {
        let img = e.apply(&hor.alg, v);
        if !img.is_zero() {
            return Err(Error::Inconsistent(format!(
                "D - nabla does not vanish on the base: {name} -> {}",
                hor.alg.fmt(&img)
            )));
        }
    }
    let values = (0..hor.hopf.alg.num_gens() as u32)
        .map(|g| {
            let (f, i, j) = pairs.lookup(g);
            let fam = &pairs.families[f];
            let mut s = NcPoly::zero();
            for (q, p) in fam.q.iter().zip(&fam.p) {
                s.add_assign(&hor.alg.mul(&q[i], &e.apply(&hor.alg, &p[j])));
            }
            hor.alg.nf(&s.neg())
        })
        .collect();
    Ok(CovMap { degree: 1, values })
}

/// `E(φ) = −(−1)^{∂φ} Σ_k φ_k χ(c_k)` for `F^∧(φ) = Σ_k φ_k⊗c_k`.
pub fn vertical_apply(hor: &Hor, pairs: &DualPairs, chi: &CovMap, x: &NcPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    for (s, c) in hor.f_wedge(x).terms() {
        let deg = hor.alg.word_degree(&s[0]);
        let sign = if deg % 2 == 0 { -c } else { c.clone() };
        let val = chi.eval_word(hor, pairs, &s[1]);
        if !val.is_zero() {
            out.add_assign(&hor.alg.mul(&NcPoly::word(s[0].clone()), &val).scale(&sign));
        }
    }
    hor.alg.nf(&out)
}

/// The vertical derivation `E_χ` given on generators by [`vertical_apply`].
pub fn vertical_derivation(hor: &Hor, pairs: &DualPairs, chi: &CovMap) -> Derivation {
    Derivation { degree: 1, images: generators(hor).iter().map(|g| vertical_apply(hor, pairs, chi, g)).collect() }
}

/// Normal words of the group algebra of length `1..=max_len`.
pub fn group_words(hor: &Hor, max_len: usize) -> Vec<Word> {
    hor.hopf.alg.normal_words(max_len).into_iter().filter(|w| !w.is_empty()).collect()
}

/// `(m⊗id)ad(a)`.
fn m_ad(hor: &Hor, pairs: &DualPairs, m: &CovMap, a: &NcPoly) -> Tensor {
    hor.hopf.ad(a).map_slot(0, |w| m.eval_word(hor, pairs, w)).nf(&hor_targets(hor))
}

/// Curvature identities for `ϱ = ϱ_D`.
pub fn verify_curvature(
    hor: &Hor,
    pairs: &DualPairs,
    d: &Derivation,
    rho: &CovMap,
    samples: &[NcPoly],
    max_len: usize,
) -> Vec<Check> {
    let alg = &hor.alg;
    let words = group_words(hor, max_len);
    let (mut cov, mut dr, mut herm) = (vec![], vec![], vec![]);
    for w in &words {
        let a = NcPoly::word(w.clone());
        let r = rho.eval_word(hor, pairs, w);
        if !hor.f_wedge(&r).sub(&m_ad(hor, pairs, rho, &a)).is_zero() {
            cov.push(hor.hopf.alg.fmt(&a));
        }
        if !d.apply(alg, &r).is_zero() {
            dr.push(hor.hopf.alg.fmt(&a));
        }
        let ka = hor.hopf.star(&hor.hopf.kappa(&a));
        if !alg.nf(&hor.star(&r).add(&rho.eval(hor, pairs, &ka))).is_zero() {
            herm.push(hor.hopf.alg.fmt(&a));
        }
    }
    let mut elems = generators(hor);
    elems.extend(samples.iter().map(|s| alg.nf(s)));
    let mut module = Vec::new();
    for w in words.iter().filter(|w| w.len() <= 2) {
        for phi in elems.iter().take(hor.alg.num_gens() + 8) {
            let a = NcPoly::word(w.clone());
            let lhs = alg.mul(&rho.eval_word(hor, pairs, w), phi);
            let mut rhs = d_squared(hor, d, phi).scale(&hor.hopf.eps_word(w));
            for (s, c) in hor.f_wedge(phi).terms() {
                let mut aw = w.clone();
                aw.extend_from_slice(&s[1]);
                let val = rho.eval(hor, pairs, &NcPoly::word(aw));
                rhs.add_assign(&alg.mul(&NcPoly::word(s[0].clone()), &val).scale(c));
            }
            if !alg.nf(&lhs.sub(&rhs)).is_zero() {
                module.push(format!("a = {}, phi = {}", hor.hopf.alg.fmt(&a), alg.fmt(phi)));
            }
        }
    }
    let mut resub = Vec::new();
    for phi in &elems {
        let mut s = d_squared(hor, d, phi);
        for (sl, c) in hor.f_wedge(phi).terms() {
            let val = rho.eval_word(hor, pairs, &sl[1]);
            s.add_assign(&alg.mul(&NcPoly::word(sl[0].clone()), &val).scale(c));
        }
        if !alg.nf(&s).is_zero() {
            resub.push(alg.fmt(phi));
        }
    }
    vec![
        Check::from_witnesses("curvature.covariant", "F^ rho(a) = (rho (x) id)ad(a)", cov),
        Check::from_witnesses("curvature.closed", "D rho(a) = 0", dr),
        Check::from_witnesses("curvature.hermitian", "rho(a)* = -rho(kappa(a)*)", herm),
        Check::from_witnesses("curvature.module", "rho(a)phi = sum_k phi_k rho(a c_k) + eps(a) D^2(phi)", module),
        Check::from_witnesses("curvature.square", "D^2(phi) = -sum_k phi_k rho(c_k)", resub),
    ]
}

/// E1, E2, E3, k-antisymmetry and the reproduction of `E` by its generator form.
pub fn verify_chi(hor: &Hor, pairs: &DualPairs, chi: &CovMap, samples: &[NcPoly], max_len: usize) -> Vec<Check> {
    let alg = &hor.alg;
    let words = group_words(hor, max_len);
    let (mut e1, mut e2) = (vec![], vec![]);
    for w in &words {
        let a = NcPoly::word(w.clone());
        let x = chi.eval_word(hor, pairs, w);
        if !hor.f_wedge(&x).sub(&m_ad(hor, pairs, chi, &a)).is_zero() {
            e1.push(hor.hopf.alg.fmt(&a));
        }
        let ka = hor.hopf.star(&hor.hopf.kappa(&a));
        if !alg.nf(&chi.eval(hor, pairs, &ka).add(&hor.star(&x))).is_zero() {
            e2.push(hor.hopf.alg.fmt(&a));
        }
    }
    let mut elems = generators(hor);
    elems.extend(samples.iter().map(|s| alg.nf(s)));
    let mut e3 = Vec::new();
    for w in words.iter().filter(|w| w.len() <= 2) {
        for phi in elems.iter().take(hor.alg.num_gens() + 8) {
            for (deg, part) in alg.homogeneous_parts(phi) {
                let lhs = alg.mul(&chi.eval_word(hor, pairs, w), &part);
                let mut rhs = vertical_apply(hor, pairs, chi, &part).scale(&hor.hopf.eps_word(w));
                for (s, c) in hor.f_wedge(&part).terms() {
                    let mut aw = w.clone();
                    aw.extend_from_slice(&s[1]);
                    let val = chi.eval(hor, pairs, &NcPoly::word(aw));
                    let c = if deg % 2 == 0 { c.clone() } else { -c };
                    rhs.add_assign(&alg.mul(&NcPoly::word(s[0].clone()), &val).scale(&c));
                }
                if !alg.nf(&lhs.sub(&rhs)).is_zero() {
                    e3.push(format!("a = {}, phi = {}", hor.hopf.alg.fmt(&NcPoly::word(w.clone())), alg.fmt(&part)));
                }
            }
        }
    }
    let e = vertical_derivation(hor, pairs, chi);
    let mut ek = Vec::new();
    for phi in &elems {
        let lhs = e.apply(alg, phi);
        let rhs = vertical_apply(hor, pairs, chi, phi);
        if !alg.nf(&lhs.sub(&rhs)).is_zero() {
            ek.push(alg.fmt(phi));
        }
    }
    vec![
        Check::from_witnesses("chi.covariant", "F^ chi(a) = (chi (x) id)ad(a)", e1),
        Check::from_witnesses("chi.hermitian", "chi(kappa(a)*) = -chi(a)*", e2),
        Check::from_witnesses("chi.module", "chi(a)phi = eps(a)E(phi) + (-1)^{|phi|} sum_k phi_k chi(a c_k)", e3),
        Check::from_witnesses("chi.antisymmetric", "chi(T_ij) + sum_ak q_ak chi(T_ki*) p_aj = 0", k_antisym_witnesses(hor, pairs, chi)),
        Check::from_witnesses("chi.reproduces", "E(phi) = -(-1)^{|phi|} sum_k phi_k chi(c_k) extends as a derivation", ek),
    ]
}

/// Residuals of `χ(T_ij) + Σ_{α,k} q_αk χ(T_ki*) p_αj`.
pub fn k_antisym_residuals(hor: &Hor, pairs: &DualPairs, chi: &CovMap) -> Vec<(String, NcPoly)> {
    let mut out = Vec::new();
    for fam in &pairs.families {
        let r = &hor.hopf.coreps[fam.corep];
        let n = r.dim();
        for i in 0..n {
            for j in 0..n {
                let mut s = chi.eval(hor, pairs, r.entry(i, j));
                for k in 0..n {
                    let inner = chi.eval(hor, pairs, &hor.hopf.star(r.entry(k, i)));
                    if inner.is_zero() {
                        continue;
                    }
                    for (q, p) in fam.q.iter().zip(&fam.p) {
                        s.add_assign(&hor.alg.mul_all([&q[k], &inner, &p[j]]));
                    }
                }
                out.push((format!("{}[{},{}]", r.name, i + 1, j + 1), hor.alg.nf(&s)));
            }
        }
    }
    out
}

fn k_antisym_witnesses(hor: &Hor, pairs: &DualPairs, chi: &CovMap) -> Vec<String> {
    k_antisym_residuals(hor, pairs, chi).into_iter().filter(|(_, r)| !r.is_zero()).map(|(n, _)| n).collect()
}

/// `ϱ_{D+E}(a) = ϱ_D(a) + Dχ(a) + χ(a⁽¹⁾)χ(a⁽²⁾)` on group words up to `max_len`.
pub fn connecting_identity(hor: &Hor, pairs: &DualPairs, d: &Derivation, chi: &CovMap, max_len: usize) -> Check {
    let e = vertical_derivation(hor, pairs, chi);
    let de = d.add(&e);
    let rho_d = curvature_extract(hor, pairs, d);
    let rho_de = curvature_extract(hor, pairs, &de);
    let mut w = Vec::new();
    for word in group_words(hor, max_len) {
        let a = NcPoly::word(word.clone());
        let mut s = rho_de.eval_word(hor, pairs, &word).sub(&rho_d.eval_word(hor, pairs, &word));
        s = s.sub(&d.apply(&hor.alg, &chi.eval_word(hor, pairs, &word)));
        for (sl, c) in hor.hopf.phi(&a).terms() {
            let prod = hor.alg.mul(&chi.eval_word(hor, pairs, &sl[0]), &chi.eval_word(hor, pairs, &sl[1]));
            s = s.sub(&prod.scale(c));
        }
        if !hor.alg.nf(&s).is_zero() {
            w.push(hor.hopf.alg.fmt(&a));
        }
    }
    Check::from_witnesses(
        "connection.connecting_identity",
        "rho_{D+E}(a) = rho_D(a) + D chi(a) + chi(a(1)) chi(a(2))",
        w,
    )
}

/// Graded Leibniz criterion: relation residues vanish and
/// `d_M(f)D(b) + D[d_M(f)b] = 0` for base generators `f` and total generators `b`.
pub fn leibniz_criterion(bundle: &Bundle, hor: &Hor, d: &Derivation, frame: &Derivation) -> Vec<Check> {
    let mut checks = vec![Check::from_witnesses(
        "leibniz.relations",
        "D respects the relations of hor_P",
        residue_witnesses(hor, d),
    )];
    let mut w = Vec::new();
    for (name, f) in &bundle.base {
        let df = frame.apply(&hor.alg, f);
        for g in 0..hor.nb as u32 {
            let b = NcPoly::gen(g);
            let s = hor.alg.mul(&df, &d.apply(&hor.alg, &b)).add(&d.apply(&hor.alg, &hor.alg.mul(&df, &b)));
            if !hor.alg.nf(&s).is_zero() {
                w.push(format!("({name}, {})", hor.alg.gen_name(g)));
            }
        }
    }
    checks.push(Check::from_witnesses("leibniz.base", "d_M(f)D(b) + D[d_M(f)b] = 0", w));
    checks
}

/// `D = D₁ + iD₂` with `D₁ = (D + D*)/2`, `D₂ = (D − D*)/2i`, `D*(φ) = D(φ*)*`.
pub fn decompose_hermitian(hor: &Hor, d: &Derivation) -> (Derivation, Derivation) {
    let conj = Derivation {
        degree: d.degree,
        images: generators(hor).iter().map(|g| hor.star(&d.apply(&hor.alg, &hor.star(g)))).collect(),
    };
    let half = Scalar::from_ratio(1, 2);
    let d1 = d.add(&conj).scale(&half);
    let d2 = d.sub(&conj).scale(&(&half * &Scalar::i().inv()));
    (d1, d2)
}

/// Hermitian check on generators, used for derived maps.
pub fn is_hermitian(hor: &Hor, d: &Derivation) -> bool {
    hermitian_witnesses(hor, d, &generators(hor)).is_empty()
}
