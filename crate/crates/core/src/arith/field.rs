use std::fmt;

use super::zmod::{is_prime, prime_factors};
use crate::error::{Error, Result};

/// Largest field we are willing to tabulate.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// An element of `F_q`, packed as the base-`p` number whose digits are the
/// coefficients of its residue polynomial (constant term least significant).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Fq(pub u32);

/// The finite field `F_q = F_p[y]/(h(y))`, `q = p^a`, together with a fixed
/// generator of `F_q^×` and discrete-log tables.
///
/// Construction is deterministic: `h` is the first monic irreducible in the
/// order of the packed index of its lower coefficients, and the generator is
/// the first packed element of multiplicative order `q - 1`.
#[derive(Clone)]
pub struct FieldCtx {
    p: u64,
    a: u32,
    q: u64,
    modulus: Vec<u64>,
    generator: Fq,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} (h = {:?})", self.p, self.a, self.modulus)
    }
}

impl FieldCtx {
    pub fn new(p: u64, a: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if a == 0 {
            return Err(Error::InvalidInput("extension degree must be positive".into()));
        }
        let q = p
            .checked_pow(a)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or(Error::FieldTooLarge { p, a })?;
        let modulus = first_irreducible(p, a as usize);
        let order = q - 1;
        let factors = prime_factors(order);
        let mut generator = None;
        for idx in 1..q {
            let g = unpack(idx, p, a as usize);
            let is_gen = factors
                .iter()
                .all(|&r| !is_one(&poly_pow_mod(&g, order / r, &modulus, p)));
            if is_gen {
                generator = Some(idx);
                break;
            }
        }
        let generator = generator
            .ok_or_else(|| Error::Internal(format!("no generator found for F_{p}^{a}")))?;

        let g = unpack(generator, p, a as usize);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = unpack(1, p, a as usize);
        for i in 0..order {
            let packed = pack(&cur, p);
            if log[packed as usize] != u32::MAX {
                return Err(Error::Internal("generator order check failed".into()));
            }
            log[packed as usize] = i as u32;
            exp.push(packed as u32);
            cur = poly_mul_mod(&cur, &g, &modulus, p);
        }
        Ok(FieldCtx {
            p,
            a,
            q,
            modulus,
            generator: Fq(generator as u32),
            exp,
            log,
        })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }
    #[inline]
    pub fn degree(&self) -> u32 {
        self.a
    }
    #[inline]
    pub fn size(&self) -> u64 {
        self.q
    }
    /// Order of the multiplicative group, `q - 1`.
    #[inline]
    pub fn order(&self) -> u64 {
        self.q - 1
    }

    /// Monic defining polynomial, coefficients mod `p`, constant term first.
    pub fn defining_poly(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> Fq {
        self.generator
    }

    pub fn zero(&self) -> Fq {
        Fq(0)
    }

    pub fn one(&self) -> Fq {
        Fq(1)
    }

    pub fn from_int(&self, v: i64) -> Fq {
        Fq(v.rem_euclid(self.p as i64) as u32)
    }

    /// Coefficients of the residue polynomial, constant term first.
    pub fn digits(&self, x: Fq) -> Vec<u64> {
        unpack(x.0 as u64, self.p, self.a as usize)
    }

    pub fn from_digits(&self, d: &[u64]) -> Fq {
        Fq(pack(d, self.p) as u32)
    }

    #[inline]
    pub fn exp(&self, e: u64) -> Fq {
        Fq(self.exp[(e % self.order()) as usize])
    }

    /// Discrete logarithm to the base of the generator; `None` for zero.
    #[inline]
    pub fn log(&self, x: Fq) -> Option<u64> {
        match self.log[x.0 as usize] {
            u32::MAX => None,
            l => Some(l as u64),
        }
    }

    pub fn add(&self, x: Fq, y: Fq) -> Fq {
        let (mut a, mut b) = (x.0 as u64, y.0 as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        Fq(out as u32)
    }

    pub fn neg(&self, x: Fq) -> Fq {
        let mut a = x.0 as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        Fq(out as u32)
    }

    pub fn sub(&self, x: Fq, y: Fq) -> Fq {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Fq, y: Fq) -> Fq {
        match (self.log(x), self.log(y)) {
            (Some(a), Some(b)) => self.exp(a + b),
            _ => Fq(0),
        }
    }

    pub fn inv(&self, x: Fq) -> Option<Fq> {
        self.log(x).map(|l| self.exp(self.order() - l))
    }

    pub fn pow(&self, x: Fq, e: i64) -> Fq {
        match self.log(x) {
            None if e == 0 => Fq(1),
            None => Fq(0),
            Some(l) => {
                let ord = self.order() as i128;
                self.exp((l as i128 * e as i128).rem_euclid(ord) as u64)
            }
        }
    }

    /// `c^(p^i)`, the i-th power of Frobenius.
    pub fn frob_power(&self, c: Fq, i: u32) -> Fq {
        match self.log(c) {
            None => c,
            Some(l) => {
                let ord = self.order() as u128;
                let mut pi = 1u128;
                for _ in 0..i {
                    pi = pi * self.p as u128 % ord.max(1);
                }
                self.exp((l as u128 * pi % ord.max(1)) as u64)
            }
        }
    }

    /// Evaluate a polynomial with coefficients in `F_p` at `z`.
    pub fn eval_prime_poly(&self, coeffs: &[u64], z: Fq) -> Fq {
        let mut acc = Fq(0);
        for &c in coeffs.iter().rev() {
            acc = self.add(self.mul(acc, z), self.from_int(c as i64));
        }
        acc
    }

    /// Evaluate the residue polynomial of `x` (an element of `small`) at `z`.
    /// When `z` is a root of `small`'s defining polynomial this is the field
    /// embedding `small -> self` sending `y` to `z`.
    pub fn embed_from(&self, small: &FieldCtx, z: Fq, x: Fq) -> Fq {
        self.eval_prime_poly(&small.digits(x), z)
    }

    /// A root of `small`'s defining polynomial inside `self`, chosen as the
    /// first packed element that works. `None` if `small` does not embed.
    pub fn find_root_of(&self, small: &FieldCtx) -> Option<Fq> {
        if self.p != small.p || !self.a.is_multiple_of(small.a) {
            return None;
        }
        (0..self.q)
            .map(|i| Fq(i as u32))
            .find(|&z| self.eval_prime_poly(small.defining_poly(), z) == Fq(0))
    }
}

fn pack(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn unpack(mut idx: u64, p: u64, a: usize) -> Vec<u64> {
    let mut out = vec![0; a];
    for c in out.iter_mut() {
        *c = idx % p;
        idx /= p;
    }
    out
}

fn is_one(x: &[u64]) -> bool {
    x.first() == Some(&1) && x[1..].iter().all(|&c| c == 0)
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// `a * b mod h` over `F_p`; inputs and output have length `deg h`.
fn poly_mul_mod(a: &[u64], b: &[u64], h: &[u64], p: u64) -> Vec<u64> {
    let d = h.len() - 1;
    let mut prod = vec![0u64; 2 * d];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_reduce(prod, h, p)
}

fn poly_reduce(mut prod: Vec<u64>, h: &[u64], p: u64) -> Vec<u64> {
    let d = h.len() - 1;
    for i in (d..prod.len()).rev() {
        let c = prod[i] % p;
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..d {
            let sub = c * h[j] % p;
            prod[i - d + j] = (prod[i - d + j] + p - sub) % p;
        }
    }
    prod.truncate(d);
    prod.resize(d, 0);
    prod
}

fn poly_pow_mod(a: &[u64], mut e: u64, h: &[u64], p: u64) -> Vec<u64> {
    let d = h.len() - 1;
    let mut acc = vec![0; d];
    acc[0] = 1 % p;
    if d == 0 {
        return acc;
    }
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &base, h, p);
        }
        base = poly_mul_mod(&base, &base, h, p);
        e >>= 1;
    }
    acc
}

fn inv_mod_p(x: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut b = x % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn poly_gcd(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
    let mut a = trim(a);
    let mut b = trim(b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    let mut r = trim(a.to_vec());
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        for j in 0..=db {
            let sub = c * b[j] % p;
            r[dr - db + j] = (r[dr - db + j] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

/// Rabin's irreducibility test for a monic `h` of degree `d` over `F_p`.
fn is_irreducible(h: &[u64], p: u64) -> bool {
    let d = h.len() - 1;
    let mut y = vec![0; d];
    if d == 1 {
        return true;
    }
    y[1] = 1;
    let frob = |k: usize| -> Vec<u64> {
        let mut x = y.clone();
        for _ in 0..k {
            x = poly_pow_mod(&x, p, h, p);
        }
        x
    };
    let full = frob(d);
    if full != y {
        return false;
    }
    for r in prime_factors(d as u64) {
        let mut x = frob(d / r as usize);
        x[1] = (x[1] + p - 1) % p;
        let g = poly_gcd(h.to_vec(), x, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn first_irreducible(p: u64, a: usize) -> Vec<u64> {
    let count = p.pow(a as u32);
    for idx in 0..count {
        let mut h = unpack(idx, p, a);
        h.push(1);
        if is_irreducible(&h, p) {
            return h;
        }
    }
    unreachable!("irreducible polynomials of every degree exist")
}
