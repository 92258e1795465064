//! Maps determined by their values on generators: (anti)homomorphisms into
//! tensor products and graded derivations.

use super::algebra::Algebra;
use super::poly::{Gen, NcPoly, Word};
use super::tensor::Tensor;
use crate::scalar::Scalar;

/// A homomorphism (or antihomomorphism) `A → B₁⊗…⊗B_k` given on generators.
#[derive(Clone, Debug)]
pub struct GenMap {
    pub images: Vec<Tensor>,
    pub anti: bool,
}

impl GenMap {
    pub fn new(images: Vec<Tensor>) -> Self {
        GenMap { images, anti: false }
    }

    pub fn anti(images: Vec<Tensor>) -> Self {
        GenMap { images, anti: true }
    }

    pub fn slots(&self) -> usize {
        self.images.first().and_then(|t| t.terms().next().map(|(s, _)| s.len())).unwrap_or(0)
    }

    pub fn apply_word(&self, w: &[Gen], targets: &[&Algebra]) -> Tensor {
        let k = targets.len();
        let mut acc = Tensor::unit(k);
        for &g in w {
            let img = &self.images[g as usize];
            acc = if self.anti { img.mul(&acc, targets) } else { acc.mul(img, targets) };
        }
        acc.nf(targets)
    }

    pub fn apply(&self, p: &NcPoly, targets: &[&Algebra]) -> Tensor {
        let mut out = Tensor::zero();
        for (w, c) in p.terms() {
            out.add_assign(&self.apply_word(w, targets).scale(c));
        }
        out
    }

    /// Residues of the defining relations; empty iff the map is well defined.
    pub fn relation_residues(&self, src: &Algebra, targets: &[&Algebra]) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for r in src.rules() {
            let l = self.apply_word(&r.lhs, targets);
            let rr = self.apply(&r.rhs, targets);
            let d = l.sub(&rr);
            if !d.is_zero() {
                out.push((format!("{} = {}", src.word_to_string(&r.lhs), src.fmt(&r.rhs)), d.fmt(targets)));
            }
        }
        out
    }
}

/// A scalar-valued functional given by a table on normal words.
pub fn apply_functional(p: &NcPoly, f: impl Fn(&Word) -> Scalar) -> Scalar {
    p.terms().fold(Scalar::zero(), |acc, (w, c)| &acc + &(c * &f(w)))
}

/// A graded derivation of fixed degree given on generators:
/// `D(g₁…g_n) = Σ_k (−1)^{∂D·∂(g₁…g_{k−1})} g₁…D(g_k)…g_n`.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub degree: i32,
    pub images: Vec<NcPoly>,
}

impl Derivation {
    pub fn zero(degree: i32, n: usize) -> Self {
        Derivation { degree, images: vec![NcPoly::zero(); n] }
    }

    pub fn apply_word_raw(&self, alg: &Algebra, w: &[Gen]) -> NcPoly {
        let mut out = NcPoly::zero();
        let mut deg_before = 0;
        for k in 0..w.len() {
            let img = &self.images[w[k] as usize];
            if !img.is_zero() {
                let left = NcPoly::word(w[..k].to_vec());
                let right = NcPoly::word(w[k + 1..].to_vec());
                let t = left.concat(img).concat(&right);
                if (self.degree * deg_before) % 2 != 0 {
                    out = out.sub(&t);
                } else {
                    out.add_assign(&t);
                }
            }
            deg_before += alg.gen_degree(w[k]);
        }
        out
    }

    pub fn apply(&self, alg: &Algebra, p: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            out.add_assign(&self.apply_word_raw(alg, w).scale(c));
        }
        alg.nf(&out)
    }

    pub fn add(&self, o: &Derivation) -> Derivation {
        assert_eq!(self.degree, o.degree);
        Derivation { degree: self.degree, images: self.images.iter().zip(&o.images).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Derivation) -> Derivation {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Derivation {
        Derivation { degree: self.degree, images: self.images.iter().map(|a| a.scale(c)).collect() }
    }

    /// Residues `D(lhs) − D(rhs)` of the defining relations.
    pub fn relation_residues(&self, alg: &Algebra) -> Vec<(String, NcPoly)> {
        let mut out = Vec::new();
        for r in alg.rules() {
            let l = self.apply(alg, &NcPoly::word(r.lhs.clone()));
            let rr = self.apply(alg, &r.rhs);
            let d = l.sub(&rr);
            if !d.is_zero() {
                out.push((format!("{} = {}", alg.word_to_string(&r.lhs), alg.fmt(&r.rhs)), d));
            }
        }
        out
    }
}
