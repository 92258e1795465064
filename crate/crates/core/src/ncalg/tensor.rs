//! Elements of tensor products `A₁⊗…⊗A_k`, stored slot-wise with no
//! flattening across slots.

use std::collections::BTreeMap;

use super::algebra::Algebra;
use super::poly::{NcPoly, Word};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct Tensor {
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    /// The unit `1⊗…⊗1` with `k` slots.
    pub fn unit(k: usize) -> Self {
        Self::term(vec![Vec::new(); k], Scalar::one())
    }

    pub fn term(slots: Vec<Word>, c: Scalar) -> Self {
        let mut t = Tensor::zero();
        t.add_term(slots, c);
        t
    }

    /// Pure tensor of polynomials, one per slot.
    pub fn pure(factors: &[&NcPoly]) -> Self {
        let mut acc = Tensor::unit(0);
        for f in factors {
            let mut next = Tensor::zero();
            for (slots, c) in acc.terms() {
                for (w, d) in f.terms() {
                    let mut s = slots.clone();
                    s.push(w.clone());
                    next.add_term(s, c * d);
                }
            }
            acc = next;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, slots: Vec<Word>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(slots) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, o: &Tensor) {
        for (s, c) in &o.terms {
            self.add_term(s.clone(), c.clone());
        }
    }

    pub fn add(&self, o: &Tensor) -> Tensor {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &Tensor) -> Tensor {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        if c.is_zero() {
            return Tensor::zero();
        }
        Tensor { terms: self.terms.iter().map(|(s, x)| (s.clone(), x * c)).collect() }
    }

    /// Reduces each slot to normal form in its algebra.
    pub fn nf(&self, algs: &[&Algebra]) -> Tensor {
        let mut out = Tensor::zero();
        for (slots, c) in &self.terms {
            let reduced: Vec<NcPoly> =
                slots.iter().zip(algs).map(|(w, a)| a.nf(&NcPoly::word(w.clone()))).collect();
            let refs: Vec<&NcPoly> = reduced.iter().collect();
            out.add_assign(&Tensor::pure(&refs).scale(c));
        }
        out
    }

    /// Slot-wise product with the Koszul sign `(−1)^{∂y_i ∂x_j}` for `i < j`.
    pub fn mul(&self, o: &Tensor, algs: &[&Algebra]) -> Tensor {
        let mut out = Tensor::zero();
        for (s1, c1) in &self.terms {
            for (s2, c2) in &o.terms {
                let mut sign_odd = false;
                for i in 0..s1.len() {
                    for j in 0..i {
                        // moving s2[j] left past s1[i], i > j
                        let d = algs[i].word_degree(&s1[i]) * algs[j].word_degree(&s2[j]);
                        if d % 2 != 0 {
                            sign_odd = !sign_odd;
                        }
                    }
                }
                let slots: Vec<Word> = s1
                    .iter()
                    .zip(s2)
                    .map(|(a, b)| {
                        let mut w = a.clone();
                        w.extend_from_slice(b);
                        w
                    })
                    .collect();
                let c = c1 * c2;
                out.add_term(slots, if sign_odd { -c } else { c });
            }
        }
        out.nf(algs)
    }

    /// Collapses a one-slot tensor into an element.
    pub fn to_poly(&self) -> NcPoly {
        let mut out = NcPoly::zero();
        for (s, c) in &self.terms {
            out.add_term(s[0].clone(), c.clone());
        }
        out
    }

    /// Value of a zero-slot tensor.
    pub fn to_scalar(&self) -> Scalar {
        self.terms.values().fold(Scalar::zero(), |acc, c| &acc + c)
    }

    /// Splits off the last slot: `Σ x_k ⊗ c_k` as pairs `(c_k-word, x_k)`.
    pub fn split_last(&self) -> Vec<(Vec<Word>, Word, Scalar)> {
        self.terms
            .iter()
            .map(|(s, c)| {
                let (head, last) = s.split_at(s.len() - 1);
                (head.to_vec(), last[0].clone(), c.clone())
            })
            .collect()
    }

    /// Groups a two-slot tensor by its second slot: `Σ_k x_k ⊗ w_k`.
    pub fn by_last(&self) -> BTreeMap<Word, NcPoly> {
        let mut out: BTreeMap<Word, NcPoly> = BTreeMap::new();
        for (s, c) in &self.terms {
            assert_eq!(s.len(), 2, "by_last expects two slots");
            out.entry(s[1].clone()).or_default().add_term(s[0].clone(), c.clone());
        }
        out
    }

    /// Groups a two-slot tensor by its first slot.
    pub fn by_first(&self) -> BTreeMap<Word, NcPoly> {
        let mut out: BTreeMap<Word, NcPoly> = BTreeMap::new();
        for (s, c) in &self.terms {
            assert_eq!(s.len(), 2, "by_first expects two slots");
            out.entry(s[0].clone()).or_default().add_term(s[1].clone(), c.clone());
        }
        out
    }

    /// Applies a linear map slot by slot (`f_i` returns the image of a word).
    pub fn map_slot(&self, slot: usize, f: impl Fn(&Word) -> NcPoly) -> Tensor {
        let mut out = Tensor::zero();
        for (s, c) in &self.terms {
            for (w, d) in f(&s[slot]).terms() {
                let mut ns = s.clone();
                ns[slot] = w.clone();
                out.add_term(ns, c * d);
            }
        }
        out
    }

    /// Slotwise star `(x⊗y)* = x*⊗y*`, compatible with the graded product
    /// and `(xy)* = (−1)^{∂x∂y} y*x*`.
    pub fn star(&self, algs: &[&Algebra]) -> Tensor {
        let mut out = Tensor::zero();
        for (s, c) in &self.terms {
            let mut acc = Tensor::unit(0);
            for (w, a) in s.iter().zip(algs) {
                let img = a.star(&NcPoly::word(w.clone()));
                let mut next = Tensor::zero();
                for (prev, x) in acc.terms() {
                    for (v, y) in img.terms() {
                        let mut ns = prev.clone();
                        ns.push(v.clone());
                        next.add_term(ns, x * y);
                    }
                }
                acc = next;
            }
            out.add_assign(&acc.scale(&c.conj()));
        }
        out
    }

    /// Replaces one slot by the slots of `f(word)`.
    pub fn expand_slot(&self, slot: usize, f: impl Fn(&Word) -> Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (s, c) in &self.terms {
            for (img, d) in f(&s[slot]).terms() {
                let mut ns = s[..slot].to_vec();
                ns.extend(img.iter().cloned());
                ns.extend(s[slot + 1..].iter().cloned());
                out.add_term(ns, c * d);
            }
        }
        out
    }

    /// Applies a scalar functional to one slot, removing it.
    pub fn contract_slot(&self, slot: usize, f: impl Fn(&Word) -> Scalar) -> Tensor {
        let mut out = Tensor::zero();
        for (s, c) in &self.terms {
            let v = f(&s[slot]);
            if v.is_zero() {
                continue;
            }
            let mut ns = s.clone();
            ns.remove(slot);
            out.add_term(ns, c * &v);
        }
        out
    }

    /// Multiplies the two slots together (both in `alg`) into a single element.
    pub fn multiply_slots(&self, alg: &Algebra) -> NcPoly {
        let mut out = NcPoly::zero();
        for (s, c) in &self.terms {
            let mut w = Vec::new();
            for x in s {
                w.extend_from_slice(x);
            }
            out.add_term(w, c.clone());
        }
        alg.nf(&out)
    }

    pub fn fmt(&self, algs: &[&Algebra]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (s, c) in &self.terms {
            let slots: Vec<String> = s.iter().zip(algs).map(|(w, a)| a.word_to_string(w)).collect();
            let body = slots.join(" (x) ");
            if c.is_one() {
                parts.push(body);
            } else if c.needs_parens() {
                parts.push(format!("({c}) {body}"));
            } else {
                parts.push(format!("{c} {body}"));
            }
        }
        parts.join(" + ")
    }
}

impl FromIterator<(Vec<Word>, Scalar)> for Tensor {
    fn from_iter<I: IntoIterator<Item = (Vec<Word>, Scalar)>>(iter: I) -> Self {
        let mut t = Tensor::zero();
        for (s, c) in iter {
            t.add_term(s, c);
        }
        t
    }
}
