use crate::arith::ring::{PadicRing, Ring};
use crate::arith::zmod::Zmod;

/// Power series `Σ c_i z^(i/den)` over a base ring, truncated after `len`
/// terms. With `den = 1` this is `R[[T]] / T^len`; the Dwork side uses
/// `den = D` for series in `π^(1/D)`.
#[derive(Clone, Debug)]
pub struct SeriesRing<R> {
    base: R,
    len: usize,
    den: u32,
}

/// Truncated `T`-series over `Z/p^M`.
pub type TRing = SeriesRing<Zmod>;

impl<R: Ring> SeriesRing<R> {
    pub fn new(base: R, len: usize) -> Self {
        Self::with_den(base, len, 1)
    }

    pub fn with_den(base: R, len: usize, den: u32) -> Self {
        assert!(len > 0, "series must keep at least the constant term");
        assert!(den > 0);
        SeriesRing { base, len, den }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn den(&self) -> u32 {
        self.den
    }

    /// The same ring with a different number of stored terms.
    pub fn with_len(&self, len: usize) -> Self {
        Self::with_den(self.base.clone(), len, self.den)
    }

    pub fn constant(&self, c: R::Elem) -> Vec<R::Elem> {
        let mut v = self.zero();
        v[0] = c;
        v
    }

    /// `c · z^(i/den)`, zero if `i` is past the truncation.
    pub fn monomial(&self, i: usize, c: R::Elem) -> Vec<R::Elem> {
        let mut v = self.zero();
        if i < self.len {
            v[i] = c;
        }
        v
    }

    /// The variable itself (`T`, or `π^(1/den)`).
    pub fn gen(&self) -> Vec<R::Elem> {
        self.monomial(1, self.base.one())
    }

    /// Index of the first nonzero term, `None` if everything vanished.
    pub fn ord(&self, a: &[R::Elem]) -> Option<usize> {
        a.iter().position(|c| !self.base.is_zero(c))
    }

    /// Multiply by `z^(k/den)`.
    pub fn shift(&self, a: &[R::Elem], k: usize) -> Vec<R::Elem> {
        let mut v = self.zero();
        let n = self.len.saturating_sub(k);
        v[k.min(self.len)..].clone_from_slice(&a[..n]);
        v
    }

    /// Divide by `z^(k/den)`; `None` if a dropped term is nonzero. The top
    /// `k` terms of the result are unknown and set to zero, so the result
    /// is only meaningful modulo `z^((len-k)/den)`.
    pub fn unshift(&self, a: &[R::Elem], k: usize) -> Option<Vec<R::Elem>> {
        if a[..k.min(self.len)].iter().any(|c| !self.base.is_zero(c)) {
            return None;
        }
        let mut v = self.zero();
        if k < self.len {
            v[..self.len - k].clone_from_slice(&a[k..self.len]);
        }
        Some(v)
    }

    /// Re-truncate into a ring of the same base with another length.
    pub fn resize(&self, a: &[R::Elem], len: usize) -> Vec<R::Elem> {
        let mut v: Vec<R::Elem> = a.iter().take(len).cloned().collect();
        v.resize(len, self.base.zero());
        v
    }

    /// `a(b(z))` for `b` without constant term.
    pub fn compose(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        assert!(self.base.is_zero(&b[0]), "inner series must have no constant term");
        // Horner from the top
        let b = b.to_vec();
        let mut acc = self.zero();
        for c in a.iter().rev() {
            acc = self.mul(&acc, &b);
            self.base.add_assign(&mut acc[0], c);
        }
        acc
    }

    pub fn scale_by(&self, a: &[R::Elem], c: &R::Elem) -> Vec<R::Elem> {
        a.iter().map(|x| self.base.mul(x, c)).collect()
    }

    /// Evaluate at a point of the base ring (the caller is responsible for
    /// the truncation being meaningful there).
    pub fn eval(&self, a: &[R::Elem], x: &R::Elem) -> R::Elem {
        let mut acc = self.base.zero();
        for c in a.iter().rev() {
            acc = self.base.mul(&acc, x);
            self.base.add_assign(&mut acc, c);
        }
        acc
    }
}

impl<R: Ring> Ring for SeriesRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.len]
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn from_i64(&self, v: i64) -> Self::Elem {
        self.constant(self.base.from_i64(v))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b[..self.len - i].iter().enumerate() {
                self.base.mul_add_assign(&mut out[i + j], x, y);
            }
        }
        out
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let b0 = self.base.inv(&a[0])?;
        let mut out = self.zero();
        out[0] = b0.clone();
        for k in 1..self.len {
            let mut acc = self.base.zero();
            for i in 1..=k {
                self.base.mul_add_assign(&mut acc, &a[i], &out[k - i]);
            }
            out[k] = self.base.neg(&self.base.mul(&b0, &acc));
        }
        Some(out)
    }
}

impl<R: PadicRing> PadicRing for SeriesRing<R> {
    fn scalars(&self) -> Zmod {
        self.base.scalars()
    }
    fn scale(&self, a: &Self::Elem, c: u64) -> Self::Elem {
        a.iter().map(|x| self.base.scale(x, c)).collect()
    }
    fn div_p_pow(&self, a: &Self::Elem, v: u32) -> Option<Self::Elem> {
        a.iter().map(|x| self.base.div_p_pow(x, v)).collect()
    }
    fn valuation(&self, a: &Self::Elem) -> Option<u32> {
        a.iter().filter_map(|x| self.base.valuation(x)).min()
    }
    fn with_precision(&self, m: u32) -> Self {
        Self::with_den(self.base.with_precision(m), self.len, self.den)
    }
    fn lower(&self, a: &Self::Elem, target: &Self) -> Self::Elem {
        a.iter().map(|x| self.base.lower(x, &target.base)).collect()
    }
}
