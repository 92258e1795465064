//! Presented graded *-algebras: generators, a length-lex decreasing rewrite
//! system, and the graded star map.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::RwLock;

use super::poly::{lenlex, Gen, LenLex, NcPoly, Word};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_STEP_BUDGET: usize = 200_000;

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
    /// Image under the star map; `None` means no star partner was declared.
    pub star: Option<NcPoly>,
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NcPoly,
}

#[derive(Debug)]
pub struct Algebra {
    pub name: String,
    gens: Vec<Generator>,
    rules: Vec<Rule>,
    by_first: Vec<Vec<usize>>,
    step_budget: usize,
    cache: RwLock<HashMap<Word, NcPoly>>,
}

impl Clone for Algebra {
    fn clone(&self) -> Self {
        Algebra {
            name: self.name.clone(),
            gens: self.gens.clone(),
            rules: self.rules.clone(),
            by_first: self.by_first.clone(),
            step_budget: self.step_budget,
            cache: RwLock::new(HashMap::new()),
        }
    }
}

impl Algebra {
    /// Builds an algebra and checks that every rule decreases in length-lex order.
    pub fn new(name: impl Into<String>, gens: Vec<Generator>, rules: Vec<Rule>) -> Result<Self> {
        let mut alg = Algebra {
            name: name.into(),
            gens,
            rules: Vec::new(),
            by_first: Vec::new(),
            step_budget: DEFAULT_STEP_BUDGET,
            cache: RwLock::new(HashMap::new()),
        };
        for r in &rules {
            if r.lhs.is_empty() || r.rhs.terms().any(|(w, _)| lenlex(w, &r.lhs).is_ge()) {
                return Err(Error::NonDecreasingRule { lhs: alg.word_to_string(&r.lhs) });
            }
        }
        alg.rules = rules;
        alg.reindex();
        Ok(alg)
    }

    fn reindex(&mut self) {
        self.by_first = vec![Vec::new(); self.gens.len()];
        for (i, r) in self.rules.iter().enumerate() {
            self.by_first[r.lhs[0] as usize].push(i);
        }
        self.cache.write().expect("cache").clear();
    }

    pub fn with_step_budget(mut self, budget: usize) -> Self {
        self.step_budget = budget;
        self
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_index(&self, name: &str) -> Option<Gen> {
        self.gens.iter().position(|g| g.name == name).map(|i| i as Gen)
    }

    pub fn gen_name(&self, g: Gen) -> &str {
        &self.gens[g as usize].name
    }

    pub fn gen_degree(&self, g: Gen) -> i32 {
        self.gens[g as usize].degree
    }

    pub fn word_degree(&self, w: &[Gen]) -> i32 {
        w.iter().map(|&g| self.gen_degree(g)).sum()
    }

    /// Degree of a homogeneous element (None if zero or inhomogeneous).
    pub fn degree(&self, p: &NcPoly) -> Option<i32> {
        let mut degs = p.terms().map(|(w, _)| self.word_degree(w));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn homogeneous_parts(&self, p: &NcPoly) -> BTreeMap<i32, NcPoly> {
        let mut out: BTreeMap<i32, NcPoly> = BTreeMap::new();
        for (w, c) in p.terms() {
            out.entry(self.word_degree(w)).or_default().add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn gen(&self, name: &str) -> NcPoly {
        NcPoly::gen(self.gen_index(name).unwrap_or_else(|| panic!("no generator `{name}` in {}", self.name)))
    }

    fn find_redex(&self, w: &[Gen]) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            for &ri in &self.by_first[w[pos] as usize] {
                let lhs = &self.rules[ri].lhs;
                if w.len() - pos >= lhs.len() && &w[pos..pos + lhs.len()] == lhs.as_slice() {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &[Gen]) -> bool {
        self.find_redex(w).is_none()
    }

    /// Normal form of a single word, reducing the length-lex largest word first.
    fn nf_word(&self, w: &[Gen]) -> Result<NcPoly> {
        if let Some(hit) = self.cache.read().expect("cache").get(w) {
            return Ok(hit.clone());
        }
        let mut pending: BTreeMap<LenLex, Scalar> = BTreeMap::new();
        pending.insert(LenLex(w.to_vec()), Scalar::one());
        let mut out = NcPoly::zero();
        let mut steps = 0usize;
        while let Some((LenLex(word), c)) = pending.pop_last() {
            match self.find_redex(&word) {
                None => out.add_term(word, c),
                Some((pos, ri)) => {
                    steps += 1;
                    if steps > self.step_budget {
                        return Err(Error::Nontermination {
                            word: self.word_to_string(w),
                            budget: self.step_budget,
                        });
                    }
                    let rule = &self.rules[ri];
                    for (rw, rc) in rule.rhs.terms() {
                        let mut nw = Vec::with_capacity(word.len() + rw.len());
                        nw.extend_from_slice(&word[..pos]);
                        nw.extend_from_slice(rw);
                        nw.extend_from_slice(&word[pos + rule.lhs.len()..]);
                        let nc = &c * rc;
                        let key = LenLex(nw);
                        match pending.get_mut(&key) {
                            Some(x) => {
                                *x = &*x + &nc;
                                if x.is_zero() {
                                    pending.remove(&key);
                                }
                            }
                            None => {
                                pending.insert(key, nc);
                            }
                        }
                    }
                }
            }
        }
        if w.len() > 1 {
            self.cache.write().expect("cache").insert(w.to_vec(), out.clone());
        }
        Ok(out)
    }

    pub fn try_nf(&self, p: &NcPoly) -> Result<NcPoly> {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            if self.is_normal(w) {
                out.add_term(w.clone(), c.clone());
            } else {
                out.add_assign(&self.nf_word(w)?.scale(c));
            }
        }
        Ok(out)
    }

    /// Normal form. Panics on nontermination; use [`Algebra::try_nf`] for untrusted rule sets.
    pub fn nf(&self, p: &NcPoly) -> NcPoly {
        self.try_nf(p).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn mul(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        self.nf(&a.concat(b))
    }

    pub fn mul_all<'a>(&self, items: impl IntoIterator<Item = &'a NcPoly>) -> NcPoly {
        items.into_iter().fold(NcPoly::one(), |acc, x| self.mul(&acc, x))
    }

    pub fn pow(&self, a: &NcPoly, e: u32) -> NcPoly {
        (0..e).fold(NcPoly::one(), |acc, _| self.mul(&acc, a))
    }

    /// Graded commutator `ab − (−1)^{∂a∂b} ba` for homogeneous arguments.
    pub fn graded_commutator(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        let da = self.degree(a).unwrap_or(0);
        let db = self.degree(b).unwrap_or(0);
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        if (da * db) % 2 == 0 {
            ab.sub(&ba)
        } else {
            ab.add(&ba)
        }
    }

    pub fn has_star(&self) -> bool {
        self.gens.iter().all(|g| g.star.is_some())
    }

    /// Star of a word: `(g1…gn)* = ± gn*…g1*` with the graded sign rule.
    pub fn try_star_word(&self, w: &[Gen]) -> Result<NcPoly> {
        let mut acc = NcPoly::one();
        let mut sign_odd = false;
        let mut deg_before = 0i32;
        for &g in w {
            let d = self.gen_degree(g);
            if (d * deg_before) % 2 != 0 {
                sign_odd = !sign_odd;
            }
            deg_before += d;
            let s = self.gens[g as usize]
                .star
                .as_ref()
                .ok_or_else(|| Error::Config(format!("generator `{}` has no star partner", self.gen_name(g))))?;
            acc = s.concat(&acc);
        }
        let acc = self.try_nf(&acc)?;
        Ok(if sign_odd { acc.neg() } else { acc })
    }

    pub fn try_star(&self, p: &NcPoly) -> Result<NcPoly> {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            out.add_assign(&self.try_star_word(w)?.scale(&c.conj()));
        }
        Ok(out)
    }

    pub fn star(&self, p: &NcPoly) -> NcPoly {
        self.try_star(p).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Normal words of length ≤ `max_len`, in length-lex order.
    pub fn normal_words(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for g in 0..self.gens.len() as Gen {
                    let mut nw: Word = w.clone();
                    nw.push(g);
                    if self.is_normal(&nw) {
                        next.push(nw);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort_by(|a, b| lenlex(a, b));
        out
    }

    pub fn word_to_string(&self, w: &[Gen]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = self.gen_name(w[i]);
            if j - i == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{}^{}", name, j - i));
            }
            i = j;
        }
        parts.join(" ")
    }

    /// Canonical text form: terms in descending length-lex order.
    pub fn fmt(&self, p: &NcPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (w, c)) in p.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative_constant();
            let mag = if neg { -c } else { c.clone() };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let ws = self.word_to_string(w);
            if w.is_empty() {
                let s = mag.to_string();
                if mag.needs_parens() && k > 0 {
                    let _ = write!(out, "({s})");
                } else {
                    out.push_str(&s);
                }
            } else if mag.is_one() {
                out.push_str(&ws);
            } else if mag.needs_parens() {
                let _ = write!(out, "({mag}) {ws}");
            } else {
                let _ = write!(out, "{mag} {ws}");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn u1() -> Algebra {
        let u = Generator { name: "u".into(), degree: 0, star: Some(NcPoly::gen(1)) };
        let us = Generator { name: "u*".into(), degree: 0, star: Some(NcPoly::gen(0)) };
        Algebra::new(
            "U(1)",
            vec![u, us],
            vec![
                Rule { lhs: vec![0, 1], rhs: NcPoly::one() },
                Rule { lhs: vec![1, 0], rhs: NcPoly::one() },
            ],
        )
        .unwrap()
    }

    #[test]
    fn unit_cancellation() {
        let a = u1();
        let p = NcPoly::word(vec![0, 1, 0]);
        assert_eq!(a.nf(&p), NcPoly::gen(0));
        assert_eq!(a.fmt(&a.nf(&NcPoly::word(vec![0, 0, 1, 0]))), "u^2");
    }

    #[test]
    fn rejects_increasing_rules() {
        let g = Generator { name: "a".into(), degree: 0, star: None };
        let r = Algebra::new("bad", vec![g], vec![Rule { lhs: vec![0], rhs: NcPoly::word(vec![0, 0]) }]);
        assert!(matches!(r, Err(Error::NonDecreasingRule { .. })));
    }

    #[test]
    fn normal_words_of_laurent_ring() {
        let a = u1();
        // 1, u, u*, u^2, u*^2
        assert_eq!(a.normal_words(2).len(), 5);
    }
}
