//! Text input for Laurent polynomials.
//!
//! ```text
//! poly  := sign? term (('+' | '-') term)*
//! term  := coeff ('*' mono)? | mono
//! mono  := var ('^' int)? ('*' var ('^' int)?)*
//! var   := 'x' digit+
//! coeff := int | 'g^' int
//! ```
//!
//! Whitespace is ignored. `g` is the fixed generator of `F_q^×`, so
//! `g^3*x1` has coefficient `g^3`; plain integers are read mod `p`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith::field::{FieldCtx, Fq};
use crate::error::{Error, Result};
use crate::polytope::laurent::{LaurentPoly, MAX_VARS};

/// Exponents beyond this are refused; nothing downstream could use them.
pub const MAX_EXPONENT: i64 = 1 << 20;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        offset,
        message: message.into(),
    })
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Unsigned digit run, folded by `step`; `None` if there are no digits.
    fn digits<T>(&mut self, init: T, mut step: impl FnMut(T, u8) -> Option<T>) -> Result<Option<T>> {
        self.skip_ws();
        let start = self.pos;
        let mut acc = init;
        while let Some(&c) = self.src.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            acc = match step(acc, c - b'0') {
                Some(v) => v,
                None => return err(start, "number too large"),
            };
            self.pos += 1;
        }
        Ok(if self.pos == start { None } else { Some(acc) })
    }

    fn signed_int(&mut self) -> Result<i64> {
        let start = self.peek().map(|_| self.pos).unwrap_or(self.pos);
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let v = self
            .digits(0i64, |acc, d| acc.checked_mul(10)?.checked_add(d as i64))?
            .ok_or(())
            .or_else(|_| err(self.pos, "expected an integer"))?;
        if v > MAX_EXPONENT {
            return err(start, "integer out of range");
        }
        Ok(if neg { -v } else { v })
    }

    fn var(&mut self, n: Option<usize>) -> Result<usize> {
        let start = self.pos;
        if !self.eat(b'x') {
            return err(start, "expected a variable x1, x2, ...");
        }
        // digits must follow the 'x' directly
        let at = self.pos;
        if !self.src.get(at).is_some_and(|c| c.is_ascii_digit()) {
            return err(at, "expected a variable index after 'x'");
        }
        let idx = self
            .digits(0usize, |acc, d| acc.checked_mul(10)?.checked_add(d as usize))?
            .unwrap();
        if idx == 0 {
            return err(at, "variables are numbered from 1");
        }
        let limit = n.unwrap_or(MAX_VARS);
        if idx > limit {
            return err(at, format!("variable x{idx} exceeds the {limit} available"));
        }
        Ok(idx - 1)
    }

    fn mono(&mut self, n: Option<usize>, exps: &mut Vec<i64>) -> Result<()> {
        loop {
            let i = self.var(n)?;
            let e = if self.eat(b'^') { self.signed_int()? } else { 1 };
            if exps.len() <= i {
                exps.resize(i + 1, 0);
            }
            exps[i] += e;
            if exps[i].abs() > MAX_EXPONENT {
                return err(self.pos, "exponent out of range");
            }
            if self.eat(b'*') {
                if self.peek() == Some(b'x') {
                    continue;
                }
                return err(self.pos, "expected a variable after '*'");
            }
            return Ok(());
        }
    }

    /// One term: coefficient as a field element and exponent vector.
    fn term(&mut self, ctx: &FieldCtx, n: Option<usize>) -> Result<(usize, Fq, Vec<i64>)> {
        let start = self.peek().map(|_| self.pos).unwrap_or(self.pos);
        let mut exps = Vec::new();
        let coeff = match self.peek() {
            Some(b'x') => {
                self.mono(n, &mut exps)?;
                return Ok((start, ctx.one(), exps));
            }
            Some(b'g') => {
                self.pos += 1;
                if !self.eat(b'^') {
                    return err(self.pos, "expected '^' after g");
                }
                let e = self.signed_int()?;
                ctx.exp(e.rem_euclid(ctx.order() as i64) as u64)
            }
            Some(c) if c.is_ascii_digit() => {
                let p = ctx.p();
                let r = self.digits(0u64, |acc, d| Some((acc * 10 + d as u64) % p))?.unwrap();
                if r == 0 {
                    return err(start, format!("coefficient is divisible by p = {p}"));
                }
                ctx.from_int(r as i64)
            }
            _ => return err(self.pos, "expected a term"),
        };
        if self.eat(b'*') {
            self.mono(n, &mut exps)?;
        }
        Ok((start, coeff, exps))
    }
}

/// Parse a Laurent polynomial over `ctx`. With `n = None` the number of
/// variables is the largest index used; otherwise indices above `n` are
/// rejected.
pub fn parse_laurent(text: &str, ctx: &Arc<FieldCtx>, n: Option<usize>) -> Result<LaurentPoly> {
    let mut ps = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut raw: Vec<(usize, Fq, Vec<i64>)> = Vec::new();
    let mut negate = if ps.eat(b'-') {
        true
    } else {
        ps.eat(b'+');
        false
    };
    loop {
        let (at, c, e) = ps.term(ctx, n)?;
        raw.push((at, if negate { ctx.neg(c) } else { c }, e));
        match ps.peek() {
            None => break,
            Some(b'+') => negate = false,
            Some(b'-') => negate = true,
            Some(_) => return err(ps.pos, "expected '+', '-' or end of input"),
        }
        ps.pos += 1;
    }

    let nvars = n.unwrap_or_else(|| raw.iter().map(|t| t.2.len()).max().unwrap_or(0).max(1));
    let mut terms: BTreeMap<Vec<i64>, (usize, Fq)> = BTreeMap::new();
    for (at, c, mut e) in raw {
        e.resize(nvars, 0);
        let entry = terms.entry(e).or_insert((at, ctx.zero()));
        entry.1 = ctx.add(entry.1, c);
    }
    if let Some((_, (at, _))) = terms.iter().find(|(_, (_, c))| *c == ctx.zero()) {
        return err(*at, "terms cancel to a zero coefficient");
    }
    if terms.keys().all(|u| u.iter().all(|&x| x == 0)) {
        return err(0, "a constant polynomial has no Newton polytope");
    }
    let terms = terms.into_iter().map(|(u, (_, c))| (u, c)).collect();
    LaurentPoly::new(ctx.clone(), nvars, terms)
}
