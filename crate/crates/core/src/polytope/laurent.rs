use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::arith::field::{FieldCtx, Fq};
use crate::error::{Error, Result};

/// Largest number of variables handled by the polytope code.
pub const MAX_VARS: usize = 4;

/// A Laurent polynomial `Σ a_u x^u` over `F_q` with nonzero coefficients.
///
/// Coefficients are residue-field elements; everywhere p-adic they stand
/// for their Teichmüller lifts.
#[derive(Clone)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Vec<i64>, Fq>,
    ctx: Arc<FieldCtx>,
}

impl LaurentPoly {
    pub fn new(ctx: Arc<FieldCtx>, n: usize, terms: BTreeMap<Vec<i64>, Fq>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("need at least one variable".into()));
        }
        if n > MAX_VARS {
            return Err(Error::DimensionTooLarge(n));
        }
        for (u, c) in &terms {
            if u.len() != n {
                return Err(Error::InvalidInput(format!("exponent {u:?} has wrong length")));
            }
            if *c == ctx.zero() || c.0 as u64 >= ctx.size() {
                return Err(Error::InvalidInput(format!("bad coefficient at {u:?}")));
            }
        }
        if terms.keys().all(|u| u.iter().all(|&e| e == 0)) {
            return Err(Error::Degenerate("polynomial has no non-constant term".into()));
        }
        Ok(LaurentPoly { n, terms, ctx })
    }

    /// Convenience constructor from `(coefficient, exponent)` pairs.
    pub fn from_terms(ctx: Arc<FieldCtx>, terms: &[(Fq, Vec<i64>)]) -> Result<Self> {
        let n = terms.first().map_or(0, |t| t.1.len());
        let mut map = BTreeMap::new();
        for (c, u) in terms {
            if map.insert(u.clone(), *c).is_some() {
                return Err(Error::InvalidInput(format!("repeated exponent {u:?}")));
            }
        }
        LaurentPoly::new(ctx, n, map)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Fq> {
        &self.terms
    }

    pub fn exponents(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The polynomial with coefficients raised to `p^i` (σ^i on lifts).
    pub fn frobenius_twist(&self, i: u32) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .map(|(u, &c)| (u.clone(), self.ctx.frob_power(c, i)))
            .collect();
        LaurentPoly {
            n: self.n,
            terms,
            ctx: self.ctx.clone(),
        }
    }

    /// Keep only the terms whose exponents satisfy `keep`. The result may
    /// be empty, in which case an error is returned.
    pub fn restrict(&self, keep: impl Fn(&[i64]) -> bool) -> Result<LaurentPoly> {
        let terms: BTreeMap<_, _> = self
            .terms
            .iter()
            .filter(|(u, _)| keep(u))
            .map(|(u, c)| (u.clone(), *c))
            .collect();
        if terms.is_empty() {
            return Err(Error::EmptyRestriction);
        }
        Ok(LaurentPoly {
            n: self.n,
            terms,
            ctx: self.ctx.clone(),
        })
    }

    /// Same support, new coefficients.
    pub fn with_coefficients(&self, coeffs: &[Fq]) -> Result<LaurentPoly> {
        assert_eq!(coeffs.len(), self.terms.len());
        let terms = self.terms.keys().cloned().zip(coeffs.iter().copied()).collect();
        LaurentPoly::new(self.ctx.clone(), self.n, terms)
    }
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms == other.terms && self.ctx.size() == other.ctx.size()
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Prints in the input syntax, coefficients as generator powers.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (u, &c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let log = self.ctx.log(c).expect("coefficients are nonzero");
            let mono: Vec<String> = u
                .iter()
                .enumerate()
                .filter(|&(_, &e)| e != 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
                .collect();
            match (log, mono.is_empty()) {
                (0, true) => write!(f, "1")?,
                (0, false) => write!(f, "{}", mono.join("*"))?,
                (l, true) => write!(f, "g^{l}")?,
                (l, false) => write!(f, "g^{l}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}
