//! Local confluence certificates: every critical overlap of two rules must
//! reduce to the same normal form along both branches.

use serde::Serialize;

use super::algebra::Algebra;
use super::poly::{NcPoly, Word};
use crate::error::Result;

#[derive(Clone, Debug, Serialize)]
pub struct Ambiguity {
    pub word: String,
    pub rules: (usize, usize),
    pub joins: bool,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfluenceReport {
    pub max_len: usize,
    pub ambiguities: Vec<Ambiguity>,
    pub star_failures: Vec<String>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.ambiguities.iter().all(|a| a.joins) && self.star_failures.is_empty()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Ambiguity> {
        self.ambiguities.iter().filter(|a| !a.joins)
    }
}

fn rewrite_at(word: &[u32], pos: usize, len: usize, rhs: &NcPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    for (rw, c) in rhs.terms() {
        let mut w: Word = word[..pos].to_vec();
        w.extend_from_slice(rw);
        w.extend_from_slice(&word[pos + len..]);
        out.add_term(w, c.clone());
    }
    out
}

/// Enumerates overlap and inclusion ambiguities of length ≤ `max_len`.
pub fn check_confluence(alg: &Algebra, max_len: usize) -> Result<ConfluenceReport> {
    let rules = alg.rules();
    let mut ambiguities = Vec::new();
    for (i, ri) in rules.iter().enumerate() {
        for (j, rj) in rules.iter().enumerate() {
            let (li, lj) = (&ri.lhs, &rj.lhs);
            // proper overlaps: suffix of li = prefix of lj
            for k in 1..li.len().min(lj.len()) {
                if li[li.len() - k..] == lj[..k] {
                    let mut w = li.clone();
                    w.extend_from_slice(&lj[k..]);
                    if w.len() <= max_len {
                        let a = alg.try_nf(&rewrite_at(&w, 0, li.len(), &ri.rhs))?;
                        let b = alg.try_nf(&rewrite_at(&w, li.len() - k, lj.len(), &rj.rhs))?;
                        ambiguities.push(Ambiguity {
                            word: alg.word_to_string(&w),
                            rules: (i, j),
                            joins: a == b,
                            left: alg.fmt(&a),
                            right: alg.fmt(&b),
                        });
                    }
                }
            }
            // inclusions: lj inside li
            if i != j && lj.len() <= li.len() && li.len() <= max_len {
                for p in 0..=li.len() - lj.len() {
                    if li[p..p + lj.len()] == lj[..] {
                        let a = alg.try_nf(&ri.rhs)?;
                        let b = alg.try_nf(&rewrite_at(li, p, lj.len(), &rj.rhs))?;
                        ambiguities.push(Ambiguity {
                            word: alg.word_to_string(li),
                            rules: (i, j),
                            joins: a == b,
                            left: alg.fmt(&a),
                            right: alg.fmt(&b),
                        });
                    }
                }
            }
        }
    }
    Ok(ConfluenceReport { max_len, ambiguities, star_failures: Vec::new() })
}

/// Checks that the star map sends every rule to a consequence of the rules.
pub fn check_star_closure(alg: &Algebra) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    for r in alg.rules() {
        let lhs = alg.try_star_word(&r.lhs)?;
        let rhs = alg.try_star(&r.rhs)?;
        let diff = alg.try_nf(&lhs.sub(&rhs))?;
        if !diff.is_zero() {
            failures.push(format!(
                "star of `{} -> {}` leaves residue {}",
                alg.word_to_string(&r.lhs),
                alg.fmt(&r.rhs),
                alg.fmt(&diff)
            ));
        }
    }
    Ok(failures)
}

/// Confluence plus star closure.
pub fn full_check(alg: &Algebra, max_len: usize) -> Result<ConfluenceReport> {
    let mut rep = check_confluence(alg, max_len)?;
    if alg.has_star() {
        rep.star_failures = check_star_closure(alg)?;
    } else {
        rep.star_failures.push("algebra has generators without star partners".into());
    }
    Ok(rep)
}
