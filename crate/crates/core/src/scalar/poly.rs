//! Sparse commutative polynomials over the Gaussian rationals, with exact
//! division and a recursive primitive-PRS gcd.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::gauss::GaussRat;

/// Exponent vector, trailing zeros trimmed. Ordered lexicographically with the
/// highest-indexed variable most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(idx: usize, e: u32) -> Self {
        if e == 0 {
            return Mono::one();
        }
        let mut v = vec![0; idx + 1];
        v[idx] = e;
        Mono(v)
    }

    fn trimmed(mut v: Vec<u32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Mono(v)
    }

    pub fn exp(&self, idx: usize) -> u32 {
        self.0.get(idx).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let n = self.0.len().max(o.0.len());
        Mono::trimmed((0..n).map(|i| self.exp(i) + o.exp(i)).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        (0..self.0.len()).all(|i| self.exp(i) <= o.exp(i))
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        let n = self.0.len().max(o.0.len());
        Mono::trimmed((0..n).map(|i| o.exp(i) - self.exp(i)).collect())
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        let n = self.0.len().min(o.0.len());
        Mono::trimmed((0..n).map(|i| self.exp(i).min(o.exp(i))).collect())
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&o.0.len())
            .then_with(|| self.0.iter().rev().cmp(o.0.iter().rev()))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    pub terms: BTreeMap<Mono, GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Mono::one(), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn monomial(m: Mono, c: GaussRat) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Poly::one()
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn leading(&self) -> Option<(&Mono, &GaussRat)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Mono, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly { terms: self.terms.iter().map(|(k, x)| (k.mul(m), x.clone())).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn conj_coeffs(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect() }
    }

    /// Highest variable index occurring, if any.
    pub fn main_var(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.0.len()).max().filter(|&l| l > 0).map(|l| l - 1)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Exact division; returns `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.inv()));
        }
        let (lm, lc) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = lc.inv();
        let mut rem = self.clone();
        let mut q = Poly::zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = &c * &lc_inv;
            rem = rem.sub(&d.mul_mono(&qm).scale(&qc));
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Coefficients with respect to variable `v`, indexed by degree.
    fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Poly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            let mut rest = m.0.clone();
            if v < rest.len() {
                rest[v] = 0;
            }
            out[e].add_term(Mono::trimmed(rest), c.clone());
        }
        out
    }

    fn from_coeffs_in(v: usize, coeffs: &[Poly]) -> Poly {
        let mut r = Poly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            r = r.add(&c.mul_mono(&Mono::var(v, e as u32)));
        }
        r
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    fn monomial_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return Mono::one(),
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        if self.is_constant() || o.is_constant() {
            return Poly::one();
        }
        if self.terms.len() == 1 || o.terms.len() == 1 {
            let m = self.monomial_content().gcd(&o.monomial_content());
            return Poly::monomial(m, GaussRat::one());
        }
        let v = self.main_var().max(o.main_var()).expect("non-constant");
        let ca = self.coeffs_in(v);
        let cb = o.coeffs_in(v);
        let cont_a = content(&ca);
        let cont_b = content(&cb);
        let g_cont = cont_a.gcd(&cont_b);
        let mut a: Vec<Poly> = ca.iter().map(|c| c.div_exact(&cont_a).expect("content")).collect();
        let mut b: Vec<Poly> = cb.iter().map(|c| c.div_exact(&cont_b).expect("content")).collect();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !(b.len() == 1 && b[0].is_zero()) {
            if b.len() == 1 {
                // nonzero constant in v: primitive part is 1
                a = vec![Poly::one()];
                break;
            }
            let r = prem(&a, &b);
            a = b;
            b = if r.iter().all(|c| c.is_zero()) {
                vec![Poly::zero()]
            } else {
                let cr = content(&r);
                r.iter().map(|c| c.div_exact(&cr).expect("content")).collect()
            };
        }
        let pp = Poly::from_coeffs_in(v, &a);
        pp.mul(&g_cont).monic()
    }
}

fn trim_coeffs(mut v: Vec<Poly>) -> Vec<Poly> {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    if v.is_empty() {
        v.push(Poly::zero());
    }
    v
}

fn content(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    if g.is_zero() {
        Poly::one()
    } else {
        g
    }
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients.
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let b = trim_coeffs(b.to_vec());
    let mut r = trim_coeffs(a.to_vec());
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<Poly> = r.iter().map(|c| c.mul(&lb)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&bc.mul(&lr));
        }
        next.pop();
        r = trim_coeffs(next);
        if dr == 0 {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::monomial(Mono::var(i, 1), GaussRat::one())
    }

    fn c(n: i64) -> Poly {
        Poly::constant(GaussRat::from_int(n))
    }

    #[test]
    fn gcd_of_products() {
        let a = x(0).add(&c(1)); // x+1
        let b = x(1).sub(&x(0)); // y-x
        let d = x(0).mul(&x(1)).add(&c(3)); // xy+3
        let p = a.mul(&b).mul(&d);
        let q = a.mul(&d).mul(&x(1).add(&c(2)));
        let g = p.gcd(&q);
        assert_eq!(g, a.mul(&d).monic());
    }

    #[test]
    fn univariate_gcd() {
        let a = x(0).pow(2).sub(&c(1));
        let b = x(0).sub(&c(1)).pow(2);
        assert_eq!(a.gcd(&b), x(0).sub(&c(1)));
    }

    #[test]
    fn exact_division() {
        let a = x(0).add(&x(1));
        let p = a.mul(&a);
        assert_eq!(p.div_exact(&a), Some(a.clone()));
        assert_eq!(p.div_exact(&x(0)), None);
    }
}
