//! The space `𝒳` of vertical maps compatible with a frame structure, solved
//! exactly on the slice of `hor¹` with total-algebra word length `≤ L`.

use std::collections::BTreeMap;

use super::{k_antisym_residuals, vertical_apply, CovMap, DualPairs};
use crate::horizontal::Hor;
use crate::linalg::{kernel, rref, SparseRow};
use crate::ncalg::{NcPoly, Tensor, Word};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug)]
pub struct RegularityOptions {
    pub bound: usize,
    /// Impose `Σ_j θ_j χ(u_ji) = 0`.
    pub sym12: bool,
    /// Also impose the module identity `χ(a)φ = ε(a)E(φ) + (−1)^{∂φ}Σφ_kχ(ac_k)`.
    pub module_identity: bool,
}

impl RegularityOptions {
    pub fn new(bound: usize) -> Self {
        RegularityOptions { bound, sym12: true, module_identity: false }
    }
}

#[derive(Clone, Debug)]
pub struct RegularitySpace {
    pub bound: usize,
    pub candidates: usize,
    /// Complex dimension of the solution space of the linear constraints.
    pub linear_dim: usize,
    /// Real dimension of `𝒳` (equal to the complex dimension of the largest
    /// star-stable subspace).
    pub real_dim: usize,
    pub basis: Vec<CovMap>,
}

impl RegularitySpace {
    pub fn is_trivial(&self) -> bool {
        self.real_dim == 0
    }
}

type Key = (u32, Word);
type Vecx = BTreeMap<Key, Scalar>;

fn to_map(v: &Vecx, ngens: usize) -> CovMap {
    let mut m = CovMap::zero(1, ngens);
    for ((g, w), c) in v {
        m.values[*g as usize].add_term(w.clone(), c.clone());
    }
    m
}

fn to_vec(m: &CovMap) -> Vecx {
    let mut v = Vecx::new();
    for (g, p) in m.values.iter().enumerate() {
        for (w, c) in p.terms() {
            v.insert((g as u32, w.clone()), c.clone());
        }
    }
    v
}

/// Linear constraint residues of a candidate map, keyed by (constraint, slots).
fn residues(hor: &Hor, pairs: &DualPairs, chi: &CovMap, opts: &RegularityOptions) -> BTreeMap<(String, Vec<Word>), Scalar> {
    let mut out = BTreeMap::new();
    let push_poly = |tag: String, p: &NcPoly, out: &mut BTreeMap<(String, Vec<Word>), Scalar>| {
        for (w, c) in p.terms() {
            out.insert((tag.clone(), vec![w.clone()]), c.clone());
        }
    };
    let ga = &hor.hopf.alg;
    let targets = [&hor.alg, ga];
    for g in 0..ga.num_gens() as u32 {
        let a = NcPoly::gen(g);
        let lhs = hor.f_wedge(&chi.values[g as usize]);
        let rhs: Tensor = hor.hopf.ad(&a).map_slot(0, |w| chi.eval_word(hor, pairs, w)).nf(&targets);
        for (s, c) in lhs.sub(&rhs).terms() {
            out.insert((format!("e1.{g}"), s.clone()), c.clone());
        }
    }
    for (k, r) in ga.rules().iter().enumerate() {
        let d = chi.eval_word(hor, pairs, &r.lhs).sub(&chi.eval(hor, pairs, &r.rhs));
        push_poly(format!("rel.{k}"), &hor.alg.nf(&d), &mut out);
    }
    if opts.sym12 {
        let n = hor.nv();
        for i in 0..n {
            let mut s = NcPoly::zero();
            for j in 0..n {
                let v = chi.eval(hor, pairs, hor.bm.corep.entry(j, i));
                s.add_assign(&hor.alg.mul(&hor.theta(j), &v));
            }
            push_poly(format!("sym.{i}"), &hor.alg.nf(&s), &mut out);
        }
    }
    for (name, r) in k_antisym_residuals(hor, pairs, chi) {
        push_poly(format!("anti.{name}"), &r, &mut out);
    }
    if opts.module_identity {
        for g in 0..ga.num_gens() as u32 {
            for phi in 0..hor.alg.num_gens() as u32 {
                let x = NcPoly::gen(phi);
                let deg = hor.alg.gen_degree(phi);
                let mut s = hor.alg.mul(&chi.values[g as usize], &x);
                s = s.sub(&vertical_apply(hor, pairs, chi, &x).scale(&hor.hopf.eps_word(&[g])));
                for (sl, c) in hor.f_wedge(&x).terms() {
                    let mut aw = vec![g];
                    aw.extend_from_slice(&sl[1]);
                    let val = chi.eval(hor, pairs, &NcPoly::word(aw));
                    let c = if deg % 2 == 0 { c.clone() } else { -c };
                    s = s.sub(&hor.alg.mul(&NcPoly::word(sl[0].clone()), &val).scale(&c));
                }
                push_poly(format!("mod.{g}.{phi}"), &hor.alg.nf(&s), &mut out);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `(Jχ)(a) = −χ(κ(a)*)*`; its fixed points are the maps satisfying E2.
fn j_map(hor: &Hor, pairs: &DualPairs, chi: &CovMap) -> CovMap {
    let ga = &hor.hopf.alg;
    let values = (0..ga.num_gens() as u32)
        .map(|g| {
            let ka = hor.hopf.star(&hor.hopf.kappa(&NcPoly::gen(g)));
            hor.alg.nf(&hor.star(&chi.eval(hor, pairs, &ka)).neg())
        })
        .collect();
    CovMap { degree: 1, values }
}

/// Independent subset of `vs` (as a basis of their span).
fn basis_of(vs: &[Vecx]) -> Vec<Vecx> {
    let keys: Vec<Key> = vs.iter().flat_map(|v| v.keys().cloned()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let idx: BTreeMap<&Key, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let rows: Vec<SparseRow> = vs.iter().map(|v| v.iter().map(|(k, c)| (idx[k], c.clone())).collect()).collect();
    rref(rows).into_iter().map(|r| r.into_iter().map(|(i, c)| (keys[i].clone(), c)).collect()).collect()
}

/// Basis of `span(us) ∩ span(ws)`.
fn intersect(us: &[Vecx], ws: &[Vecx]) -> Vec<Vecx> {
    if us.is_empty() || ws.is_empty() {
        return Vec::new();
    }
    let keys: Vec<Key> = us.iter().chain(ws).flat_map(|v| v.keys().cloned()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let idx: BTreeMap<&Key, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut rows = vec![SparseRow::new(); keys.len()];
    for (col, v) in us.iter().chain(ws).enumerate() {
        for (k, c) in v {
            rows[idx[k]].insert(col, c.clone());
        }
    }
    let m = us.len();
    let sols = kernel(&rows, us.len() + ws.len());
    let vecs: Vec<Vecx> = sols
        .iter()
        .map(|s| {
            let mut acc = Vecx::new();
            for (a, u) in s[..m].iter().zip(us) {
                if a.is_zero() {
                    continue;
                }
                for (k, c) in u {
                    let e = acc.entry(k.clone()).or_insert_with(Scalar::zero);
                    *e = &*e + &(a * c);
                }
            }
            acc.retain(|_, c| !c.is_zero());
            acc
        })
        .filter(|v| !v.is_empty())
        .collect();
    basis_of(&vecs)
}

/// Solves for `𝒳` on the slice `{χ(g) ∈ span(bθ_i) : |b| ≤ bound}`.
pub fn regularity_space(hor: &Hor, pairs: &DualPairs, opts: RegularityOptions) -> RegularitySpace {
    let ng = hor.hopf.alg.num_gens();
    let bwords: Vec<Word> = hor.alg.normal_words(opts.bound).into_iter().filter(|w| w.iter().all(|&g| (g as usize) < hor.nb)).collect();
    let mut unknowns: Vec<Key> = Vec::new();
    for g in 0..ng as u32 {
        for b in &bwords {
            for i in 0..hor.nv() {
                let mut w = b.clone();
                w.push((hor.nb + i) as u32);
                unknowns.push((g, w));
            }
        }
    }
    let mut rows: BTreeMap<(String, Vec<Word>), SparseRow> = BTreeMap::new();
    for (col, (g, w)) in unknowns.iter().enumerate() {
        let mut chi = CovMap::zero(1, ng);
        chi.values[*g as usize] = NcPoly::word(w.clone());
        for (key, c) in residues(hor, pairs, &chi, &opts) {
            rows.entry(key).or_default().insert(col, c);
        }
    }
    let rows: Vec<SparseRow> = rows.into_values().collect();
    let sols = kernel(&rows, unknowns.len());
    let linear: Vec<Vecx> = sols
        .iter()
        .map(|s| {
            s.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (unknowns[k].clone(), c.clone())).collect()
        })
        .collect();
    let linear_dim = linear.len();
    let mut space = linear;
    loop {
        let images: Vec<Vecx> = space.iter().map(|v| to_vec(&j_map(hor, pairs, &to_map(v, ng)))).collect();
        let next = intersect(&space, &images);
        if next.len() == space.len() {
            break;
        }
        space = next;
    }
    let basis = hermitian_basis(hor, pairs, &space, ng);
    RegularitySpace { bound: opts.bound, candidates: unknowns.len(), linear_dim, real_dim: space.len(), basis }
}

/// A complex basis of a `J`-stable space made of `J`-fixed vectors; such a
/// basis is also a real basis of the fixed points.
fn hermitian_basis(hor: &Hor, pairs: &DualPairs, space: &[Vecx], ng: usize) -> Vec<CovMap> {
    let mut chosen: Vec<Vecx> = Vec::new();
    for v in space {
        let iv: Vecx = v.iter().map(|(k, c)| (k.clone(), c * &Scalar::i())).collect();
        for w in [v, &iv] {
            let m = to_map(w, ng);
            let fixed = to_vec(&m.add(&j_map(hor, pairs, &m)));
            if fixed.is_empty() {
                continue;
            }
            let mut trial = chosen.clone();
            trial.push(fixed.clone());
            if basis_of(&trial).len() > chosen.len() {
                chosen.push(fixed);
            }
        }
        if chosen.len() == space.len() {
            break;
        }
    }
    chosen.iter().map(|v| to_map(v, ng)).collect()
}
