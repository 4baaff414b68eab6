use std::fmt;

use super::ring::{PadicRing, Ring};
use crate::error::{Error, Result};

/// Largest modulus we allow; products of two residues must fit in `u128`
/// and sums of two residues in `u64`.
const MAX_MODULUS: u64 = 1 << 62;

/// The ring `Z/p^M`, residues stored as `u64` in `[0, p^M)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Zmod {
    p: u64,
    prec: u32,
    modulus: u64,
}

impl fmt::Debug for Zmod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.p, self.prec)
    }
}

impl Zmod {
    pub fn new(p: u64, prec: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut modulus: u64 = 1;
        for _ in 0..prec {
            modulus = modulus
                .checked_mul(p)
                .filter(|&m| m <= MAX_MODULUS)
                .ok_or_else(|| {
                    Error::InvalidInput(format!("{p}^{prec} exceeds the 62-bit residue range"))
                })?;
        }
        Ok(Zmod { p, prec, modulus })
    }

    /// Largest precision representable for `p`.
    pub fn max_precision(p: u64) -> u32 {
        let mut m: u64 = 1;
        let mut k = 0;
        while let Some(next) = m.checked_mul(p).filter(|&x| x <= MAX_MODULUS) {
            m = next;
            k += 1;
        }
        k
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn prec(&self) -> u32 {
        self.prec
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn reduce_u64(&self, v: u64) -> u64 {
        v % self.modulus
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.modulus as i128) as u64
    }

    #[inline]
    pub fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.modulus as i128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.modulus;
        let mut acc = 1 % self.modulus;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a unit (`a` not divisible by `p`).
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            return if self.modulus == 1 { Some(0) } else { None };
        }
        let (mut r0, mut r1) = (self.modulus as i128, a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce_i128(s0))
    }

    /// p-adic valuation of a residue; `None` if it is zero.
    pub fn val(&self, a: u64) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let mut v = 0;
        let mut x = a;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        Some(v)
    }

    /// `a / p^v` when `p^v | a`.
    pub fn div_p_pow(&self, a: u64, v: u32) -> Option<u64> {
        let pv = self.p.checked_pow(v)?;
        if !a.is_multiple_of(pv) {
            return None;
        }
        Some(a / pv)
    }

    pub fn with_prec(&self, m: u32) -> Zmod {
        Zmod::new(self.p, m).expect("lower precision of a valid modulus")
    }

    /// Symmetric representative in `(-p^M/2, p^M/2]`.
    pub fn signed(&self, a: u64) -> i128 {
        if a > self.modulus / 2 {
            a as i128 - self.modulus as i128
        } else {
            a as i128
        }
    }

    /// Teichmüller representative of `c mod p`: the unique `(p-1)`-th root of
    /// unity (or zero) congruent to `c`.
    pub fn teichmuller(&self, c: u64) -> u64 {
        let mut t = c % self.p;
        for _ in 0..self.prec {
            t = self.pow(t, self.p);
        }
        t
    }
}

impl Ring for Zmod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        Zmod::add(self, *a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        Zmod::sub(self, *a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        Zmod::neg(self, *a)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        Zmod::mul(self, *a, *b)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        Zmod::inv(self, *a)
    }
    fn mul_add_assign(&self, acc: &mut u64, a: &u64, b: &u64) {
        *acc = ((*acc as u128 + *a as u128 * *b as u128) % self.modulus as u128) as u64;
    }
}

impl PadicRing for Zmod {
    fn scalars(&self) -> Zmod {
        *self
    }
    fn scale(&self, a: &u64, c: u64) -> u64 {
        Zmod::mul(self, *a, c)
    }
    fn div_p_pow(&self, a: &u64, v: u32) -> Option<u64> {
        Zmod::div_p_pow(self, *a, v)
    }
    fn valuation(&self, a: &u64) -> Option<u32> {
        self.val(*a)
    }
    fn with_precision(&self, m: u32) -> Self {
        self.with_prec(m)
    }
    fn lower(&self, a: &u64, target: &Self) -> u64 {
        a % target.modulus
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `ord_p(n!)` by Legendre's formula.
pub fn factorial_valuation(p: u64, n: u64) -> u32 {
    let mut v = 0;
    let mut pk = p;
    while pk <= n {
        v += (n / pk) as u32;
        pk = match pk.checked_mul(p) {
            Some(x) => x,
            None => break,
        };
    }
    v
}

/// `ord_p(n)` for `n > 0`.
pub fn int_valuation(p: u64, mut n: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}
