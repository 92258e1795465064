//! Exact scalars: rational functions in formal parameters over the Gaussian
//! rationals.
//!
//! Parameters are interned process-wide by name. A parameter is either *real*
//! (fixed by conjugation) or *unitary* (conjugation sends it to its inverse).

pub mod gauss;
pub mod poly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use gauss::GaussRat;
pub use poly::{Mono, Poly};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Real,
    Unitary,
}

fn registry() -> &'static RwLock<Vec<(String, ParamKind)>> {
    static REG: OnceLock<RwLock<Vec<(String, ParamKind)>>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(Vec::new()))
}

/// Interns a parameter name. Fails if the name was interned with another kind.
pub fn intern_param(name: &str, kind: ParamKind) -> Result<usize, String> {
    let mut reg = registry().write().expect("parameter registry poisoned");
    if let Some(pos) = reg.iter().position(|(n, _)| n == name) {
        if reg[pos].1 != kind {
            return Err(format!("parameter `{name}` already declared as {:?}", reg[pos].1));
        }
        return Ok(pos);
    }
    reg.push((name.to_string(), kind));
    Ok(reg.len() - 1)
}

pub fn param_name(idx: usize) -> String {
    registry().read().expect("parameter registry poisoned")[idx].0.clone()
}

fn param_kind(idx: usize) -> ParamKind {
    registry().read().expect("parameter registry poisoned")[idx].1
}

/// A canonical rational function `num/den`: gcd-free, `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: Poly::one(), den: Poly::one() }
    }

    pub fn i() -> Self {
        Scalar::from_gauss(GaussRat::i())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_gauss(GaussRat::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_gauss(GaussRat::from_ratio(n, d))
    }

    pub fn from_gauss(g: GaussRat) -> Self {
        Scalar { num: Poly::constant(g), den: Poly::one() }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::from_gauss(GaussRat::from_rational(r))
    }

    pub fn param(idx: usize) -> Self {
        Scalar { num: Poly::monomial(Mono::var(idx, 1), GaussRat::one()), den: Poly::one() }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn from_parts(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Scalar::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        let lc = den.leading().expect("nonzero").1.inv();
        Scalar { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num == self.den
    }

    pub fn as_gauss(&self) -> Option<GaussRat> {
        if self.den.is_constant() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_gauss().is_some()
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero scalar");
        Scalar::from_parts(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Scalar {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Complex conjugation: `i ↦ −i`, real parameters fixed, unitary parameters inverted.
    pub fn conj(&self) -> Scalar {
        let mut num = self.num.conj_coeffs();
        let mut den = self.den.conj_coeffs();
        let unitary: Vec<usize> = (0..num.main_var().max(den.main_var()).map(|v| v + 1).unwrap_or(0))
            .filter(|&v| param_kind(v) == ParamKind::Unitary)
            .collect();
        for v in unitary {
            let dn = num.degree_in(v);
            let dd = den.degree_in(v);
            let n2 = invert_var(&num, v, dn);
            let d2 = invert_var(&den, v, dd);
            // num(1/v)/den(1/v) = n2 v^dd / (d2 v^dn)
            num = n2.mul_mono(&Mono::var(v, dd));
            den = d2.mul_mono(&Mono::var(v, dn));
        }
        Scalar::from_parts(num, den)
    }

    /// Substitutes exact values for parameters. Fails if a denominator vanishes.
    pub fn specialize(&self, values: &[(usize, GaussRat)]) -> Result<Scalar, String> {
        let n = subst(&self.num, values);
        let d = subst(&self.den, values);
        if d.is_zero() {
            return Err(format!("denominator {} vanishes under specialization", poly_to_string(&self.den)));
        }
        Ok(Scalar::from_parts(n, d))
    }

    pub fn parse_rational(s: &str) -> Option<Scalar> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(Scalar::from_rational(BigRational::new(a, b)))
        } else {
            let a: BigInt = s.parse().ok()?;
            Some(Scalar::from_rational(BigRational::from_integer(a)))
        }
    }
}

fn invert_var(p: &Poly, v: usize, deg: u32) -> Poly {
    let mut r = Poly::zero();
    for (m, c) in &p.terms {
        let mut e = m.0.clone();
        if e.len() <= v {
            e.resize(v + 1, 0);
        }
        e[v] = deg - e[v];
        r.add_term(trim(e), c.clone());
    }
    r
}

fn trim(mut e: Vec<u32>) -> Mono {
    while e.last() == Some(&0) {
        e.pop();
    }
    Mono(e)
}

fn subst(p: &Poly, values: &[(usize, GaussRat)]) -> Poly {
    let mut r = Poly::zero();
    for (m, c) in &p.terms {
        let mut coeff = c.clone();
        let mut e = m.0.clone();
        for (v, val) in values {
            if *v < e.len() && e[*v] > 0 {
                coeff = &coeff * &val.pow(e[*v]);
                e[*v] = 0;
            }
        }
        r.add_term(trim(e), coeff);
    }
    r
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Scalar::from_parts(self.num.add(&o.num), self.den.clone());
        }
        Scalar::from_parts(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_constant() && o.den.is_constant() {
            return Scalar::from_parts(self.num.mul(&o.num), self.den.mul(&o.den));
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd");
        let d2 = o.den.div_exact(&g1).expect("gcd");
        let n2 = o.num.div_exact(&g2).expect("gcd");
        let d1 = self.den.div_exact(&g2).expect("gcd");
        Scalar::from_parts(n1.mul(&n2), d1.mul(&d2))
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn mono_to_string(m: &Mono) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(param_name(i)),
            _ => parts.push(format!("{}^{}", param_name(i), e)),
        }
    }
    parts.join(" ")
}

pub(crate) fn poly_to_string(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative_real();
        let mag = if neg { -c } else { c.clone() };
        if k > 0 {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        if m.is_one() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono_to_string(m));
        } else if mag.is_compound() {
            out.push_str(&format!("({}) {}", mag, mono_to_string(m)));
        } else {
            out.push_str(&format!("{} {}", mag, mono_to_string(m)));
        }
    }
    out
}

impl Scalar {
    /// True when printing this scalar as a coefficient needs parentheses.
    pub fn needs_parens(&self) -> bool {
        !self.den.is_constant() || self.num.terms.len() > 1 || self.num.as_constant().map(|c| c.is_compound()).unwrap_or(false)
    }

    pub fn is_negative_constant(&self) -> bool {
        self.num.terms.len() == 1 && self.num.terms.values().next().map(|c| c.is_negative_real()).unwrap_or(false)
            && self.den.is_constant()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = poly_to_string(&self.num);
        if self.den.is_one() {
            return write!(f, "{n}");
        }
        let d = poly_to_string(&self.den);
        let wrap = |s: String, many: bool| if many { format!("({s})") } else { s };
        write!(
            f,
            "{}/{}",
            wrap(n, self.num.terms.len() > 1),
            wrap(d.clone(), self.den.terms.len() > 1 || d.contains(' '))
        )
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam() -> Scalar {
        Scalar::param(intern_param("lambda", ParamKind::Real).unwrap())
    }

    #[test]
    fn canonical_form_cancels() {
        let l = lam();
        let one = Scalar::one();
        let a = &(&l * &l) - &one; // λ²−1
        let b = &l + &one;
        let q = &a / &b;
        assert_eq!(q, &l - &one);
        assert!((&q - &(&l - &one)).is_zero());
    }

    #[test]
    fn conjugation_fixes_real_and_inverts_unitary() {
        let mu = Scalar::param(intern_param("mu", ParamKind::Unitary).unwrap());
        let l = lam();
        assert_eq!(l.conj(), l);
        assert_eq!(mu.conj(), mu.inv());
        let z = &(&mu + &Scalar::i()) / &(&l + &Scalar::one());
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn specialize_guards_denominators() {
        let idx = intern_param("lambda", ParamKind::Real).unwrap();
        let l = lam();
        let x = &Scalar::one() / &(&l + &Scalar::one());
        assert!(x.specialize(&[(idx, GaussRat::from_int(-1))]).is_err());
        assert_eq!(x.specialize(&[(idx, GaussRat::from_int(1))]).unwrap(), Scalar::from_ratio(1, 2));
    }
}
