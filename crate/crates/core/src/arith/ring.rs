use std::fmt::Debug;

use super::zmod::Zmod;

/// A commutative ring whose elements are plain values and whose operations
/// live on a context object (modulus, defining polynomial, truncation...).
pub trait Ring: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Multiplicative inverse, `None` when `a` is not a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let prod = self.mul(a, b);
        self.add_assign(acc, &prod);
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// Rings that are finite free modules over `Z/p^M`.
///
/// Everything p-adic in the crate sits on top of this: precision is a single
/// absolute exponent `M` shared by every component of an element.
pub trait PadicRing: Ring {
    fn scalars(&self) -> Zmod;

    fn prime(&self) -> u64 {
        self.scalars().p()
    }

    fn precision(&self) -> u32 {
        self.scalars().prec()
    }

    /// Multiply by a residue of `Z/p^M`.
    fn scale(&self, a: &Self::Elem, c: u64) -> Self::Elem;

    /// Divide every component by `p^v`; `None` if some component is not
    /// divisible. The result is only meaningful modulo `p^(M-v)`.
    fn div_p_pow(&self, a: &Self::Elem, v: u32) -> Option<Self::Elem>;

    /// Smallest p-adic valuation among the components, `None` for zero.
    fn valuation(&self, a: &Self::Elem) -> Option<u32>;

    /// The same ring at a lower precision.
    fn with_precision(&self, m: u32) -> Self;

    /// Reduce an element into `target`, which must be `self` at a precision
    /// no larger than the current one.
    fn lower(&self, a: &Self::Elem, target: &Self) -> Self::Elem;
}

/// Divide by a nonzero integer inside a p-adic ring, returning the quotient
/// and the number of p-adic digits lost.
pub fn div_int<R: PadicRing>(ring: &R, a: &R::Elem, k: u64) -> Option<(R::Elem, u32)> {
    assert!(k > 0);
    let p = ring.prime();
    let mut w = k;
    let mut v = 0;
    while w.is_multiple_of(p) {
        w /= p;
        v += 1;
    }
    let q = ring.div_p_pow(a, v)?;
    let zm = ring.scalars();
    let winv = zm.inv(zm.reduce_u64(w))?;
    Some((ring.scale(&q, winv), v))
}
