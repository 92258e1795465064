//! Expression syntax for algebra elements.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (factor | '/' factor)*          juxtaposition is the product
//! factor := atom ('*' | '^' int)*                  postfix star and powers
//! atom   := integer | name | 'i' | '(' expr ')'
//! ```
//!
//! A name resolves to a generator (a trailing `*` is first tried as part of
//! the generator name), then to a parameter, then `i`.

use std::collections::BTreeMap;

use super::algebra::Algebra;
use super::poly::NcPoly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub struct Parser<'a> {
    alg: &'a Algebra,
    params: &'a BTreeMap<String, Scalar>,
    chars: Vec<char>,
    pos: usize,
}

pub fn parse_expr(alg: &Algebra, params: &BTreeMap<String, Scalar>, text: &str) -> Result<NcPoly> {
    let mut p = Parser { alg, params, chars: text.chars().collect(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(alg.nf(&e))
}

impl Parser<'_> {
    fn err(&self, message: String) -> Error {
        Error::Parse { column: self.pos + 1, message }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<NcPoly> {
        let mut acc = NcPoly::zero();
        let mut sign = 1;
        match self.peek() {
            Some('-') => {
                sign = -1;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some('+') => {
                    sign = 1;
                    self.pos += 1;
                }
                Some('-') => {
                    sign = -1;
                    self.pos += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(c: char) -> bool {
        c.is_alphanumeric() || c == '(' || c == '_'
    }

    fn term(&mut self) -> Result<NcPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    let s = d
                        .as_scalar()
                        .filter(|s| !s.is_zero())
                        .ok_or_else(|| self.err("division by a non-scalar or zero".into()))?;
                    acc = acc.scale(&s.inv());
                }
                Some(c) if Self::starts_atom(c) => {
                    let f = self.factor()?;
                    acc = self.alg.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<NcPoly> {
        let mut base = self.atom()?;
        loop {
            // postfix operators bind tightly; no whitespace skipping before `*`
            match self.chars.get(self.pos).copied() {
                Some('*') => {
                    self.pos += 1;
                    base = self.alg.try_star(&base)?;
                }
                Some('^') => {
                    self.pos += 1;
                    let e = self.integer()?;
                    if e < 0 {
                        let s = base
                            .as_scalar()
                            .filter(|s| !s.is_zero())
                            .ok_or_else(|| self.err("negative power of a non-scalar".into()))?;
                        base = NcPoly::scalar(s.pow(e as i32));
                    } else {
                        base = self.alg.pow(&base, e as u32);
                    }
                }
                _ => return Ok(base),
            }
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err(format!("expected integer, found `{s}`")))
    }

    fn atom(&mut self) -> Result<NcPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let v = Scalar::parse_rational(&s).ok_or_else(|| self.err(format!("bad number `{s}`")))?;
                Ok(NcPoly::scalar(v))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_' || self.chars[self.pos] == '\'')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if self.chars.get(self.pos) == Some(&'*') {
                    let starred = format!("{name}*");
                    if let Some(g) = self.alg.gen_index(&starred) {
                        self.pos += 1;
                        return Ok(NcPoly::gen(g));
                    }
                }
                if let Some(g) = self.alg.gen_index(&name) {
                    return Ok(NcPoly::gen(g));
                }
                if let Some(v) = self.params.get(&name) {
                    return Ok(NcPoly::scalar(v.clone()));
                }
                if name == "i" {
                    return Ok(NcPoly::scalar(Scalar::i()));
                }
                self.pos = start;
                Err(Error::UnknownSymbol(name))
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input".into())),
        }
    }
}
