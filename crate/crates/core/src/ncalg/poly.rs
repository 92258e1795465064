//! Noncommutative polynomials: finite linear combinations of words.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::scalar::Scalar;

pub type Gen = u32;
pub type Word = Vec<Gen>;

/// Length-lexicographic comparison of words over the declared generator order.
pub fn lenlex(a: &[Gen], b: &[Gen]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Word key ordered length-lexicographically.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct LenLex(pub Word);

impl Ord for LenLex {
    fn cmp(&self, o: &Self) -> Ordering {
        lenlex(&self.0, &o.0)
    }
}

impl PartialOrd for LenLex {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Scalar::one())
    }

    pub fn gen(g: Gen) -> Self {
        Self::word(vec![g])
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &[Gen]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The scalar value when the element is a multiple of the unit.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
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

    pub fn add_assign(&mut self, o: &NcPoly) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn add(&self, o: &NcPoly) -> NcPoly {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &NcPoly) -> NcPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// Concatenation product in the free algebra (no reduction).
    pub fn concat(&self, o: &NcPoly) -> NcPoly {
        let mut r = NcPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                r.add_term(w, c1 * c2);
            }
        }
        r
    }

    /// Longest word length occurring.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Applies a scalar map to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> NcPoly {
        let mut r = NcPoly::zero();
        for (w, c) in &self.terms {
            r.add_term(w.clone(), f(c));
        }
        r
    }

    /// Terms sorted length-lexicographically, largest first.
    pub fn sorted_terms(&self) -> Vec<(&Word, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| lenlex(b.0, a.0));
        v
    }
}

impl FromIterator<(Word, Scalar)> for NcPoly {
    fn from_iter<I: IntoIterator<Item = (Word, Scalar)>>(iter: I) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }
}
