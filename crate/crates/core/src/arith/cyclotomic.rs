use super::ring::{PadicRing, Ring};
use super::zmod::Zmod;
use crate::error::{Error, Result};

/// `Z_p[ζ]/p^M` for a primitive `p^m`-th root of unity `ζ`, in the basis
/// `1, π, ..., π^(e-1)` with `π = ζ - 1` and `e = p^(m-1)(p-1)`.
///
/// `π` is a uniformizer: valuations are reported in units of `ord(π) = 1`,
/// so `ord(p) = e`.
#[derive(Clone, Debug)]
pub struct CycRing {
    zm: Zmod,
    m: u32,
    e: usize,
    /// Minimal polynomial of `π` without its leading 1, constant term first.
    minpoly: Vec<u64>,
}

pub type CycElem = Vec<u64>;

impl CycRing {
    pub fn new(p: u64, m: u32, prec: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("character level m must be at least 1".into()));
        }
        let zm = Zmod::new(p, prec)?;
        let pm1 = p.pow(m - 1);
        let e = (pm1 * (p - 1)) as usize;
        // Φ_{p^m}(1+x) = Σ_{j<p} (1+x)^{j p^(m-1)}
        let mut phi = vec![0u64; e + 1];
        for j in 0..p {
            let n = (j * pm1) as usize;
            for (i, c) in phi.iter_mut().enumerate().take(n + 1) {
                *c = zm.add(*c, binom_mod(&zm, n as u64, i as u64));
            }
        }
        debug_assert_eq!(phi[e], zm.one());
        phi.truncate(e);
        Ok(CycRing {
            zm,
            m,
            e,
            minpoly: phi,
        })
    }

    pub fn level(&self) -> u32 {
        self.m
    }

    /// Ramification index `e = p^(m-1)(p-1)`, the length of an element.
    pub fn ramification(&self) -> usize {
        self.e
    }

    /// `p^m`, the order of `ζ`.
    pub fn order(&self) -> u64 {
        self.zm.p().pow(self.m)
    }

    pub fn uniformizer(&self) -> CycElem {
        let mut v = self.zero();
        if self.e > 1 {
            v[1] = self.zm.one();
        } else {
            // p = 2, m = 1: ζ = -1, π = -2
            v[0] = self.zm.reduce_i64(-2);
        }
        v
    }

    pub fn zeta(&self) -> CycElem {
        self.add(&self.one(), &self.uniformizer())
    }

    /// `ζ^0, ..., ζ^(p^m - 1)`.
    pub fn zeta_powers(&self) -> Vec<CycElem> {
        let z = self.zeta();
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut cur = self.one();
        for _ in 0..self.order() {
            let next = self.mul(&cur, &z);
            out.push(cur);
            cur = next;
        }
        out
    }

    /// Largest valuation that can be certified: `e·M`.
    pub fn ord_cap(&self) -> u64 {
        self.e as u64 * self.zm.prec() as u64
    }

    /// `ord_π(x) = min_i (e·ord_p(c_i) + i)`; `None` means the value is at
    /// least [`ord_cap`](Self::ord_cap).
    pub fn ord(&self, x: &CycElem) -> Option<u64> {
        x.iter()
            .enumerate()
            .filter_map(|(i, &c)| self.zm.val(c).map(|v| self.e as u64 * v as u64 + i as u64))
            .min()
    }
}

/// `binom(n, k) mod p^M`, tracking the p-part of the running product separately.
pub(crate) fn binom_mod(zm: &Zmod, n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let p = zm.p();
    let mut unit = zm.one();
    let mut v: i64 = 0;
    for j in 0..k {
        let mut num = n - j;
        let mut den = j + 1;
        while num.is_multiple_of(p) {
            num /= p;
            v += 1;
        }
        while den % p == 0 {
            den /= p;
            v -= 1;
        }
        unit = zm.mul(unit, zm.reduce_u64(num));
        unit = zm.mul(unit, zm.inv(zm.reduce_u64(den)).expect("p-free part is a unit"));
    }
    if v as u64 >= zm.prec() as u64 {
        0
    } else {
        zm.mul(unit, zm.pow(p, v as u64))
    }
}

impl Ring for CycRing {
    type Elem = CycElem;

    fn zero(&self) -> CycElem {
        vec![0; self.e]
    }
    fn one(&self) -> CycElem {
        let mut v = self.zero();
        v[0] = self.zm.one();
        v
    }
    fn from_i64(&self, c: i64) -> CycElem {
        let mut v = self.zero();
        v[0] = self.zm.reduce_i64(c);
        v
    }
    fn add(&self, a: &CycElem, b: &CycElem) -> CycElem {
        a.iter().zip(b).map(|(&x, &y)| self.zm.add(x, y)).collect()
    }
    fn sub(&self, a: &CycElem, b: &CycElem) -> CycElem {
        a.iter().zip(b).map(|(&x, &y)| self.zm.sub(x, y)).collect()
    }
    fn neg(&self, a: &CycElem) -> CycElem {
        a.iter().map(|&x| self.zm.neg(x)).collect()
    }
    fn mul(&self, a: &CycElem, b: &CycElem) -> CycElem {
        let e = self.e;
        let m = self.zm.modulus() as u128;
        let mut prod = vec![0u128; 2 * e - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % m;
            }
        }
        for i in (e..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..e {
                let sub = c * self.minpoly[j] as u128 % m;
                prod[i - e + j] = (prod[i - e + j] + m - sub) % m;
            }
        }
        prod[..e].iter().map(|&c| c as u64).collect()
    }
    fn is_zero(&self, a: &CycElem) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn inv(&self, a: &CycElem) -> Option<CycElem> {
        // units are exactly the elements with a unit constant term
        let c0 = self.zm.inv(a[0])?;
        let mut x = self.from_i64(0);
        x[0] = c0;
        let two = self.from_i64(2);
        for _ in 0..=(2 * self.ord_cap()).ilog2() + 1 {
            x = self.mul(&x, &self.sub(&two, &self.mul(a, &x)));
        }
        Some(x)
    }
}

impl PadicRing for CycRing {
    fn scalars(&self) -> Zmod {
        self.zm
    }
    fn scale(&self, a: &CycElem, c: u64) -> CycElem {
        a.iter().map(|&x| self.zm.mul(x, c)).collect()
    }
    fn div_p_pow(&self, a: &CycElem, v: u32) -> Option<CycElem> {
        a.iter().map(|&x| self.zm.div_p_pow(x, v)).collect()
    }
    fn valuation(&self, a: &CycElem) -> Option<u32> {
        a.iter().filter_map(|&x| self.zm.val(x)).min()
    }
    fn with_precision(&self, m: u32) -> Self {
        CycRing::new(self.zm.p(), self.m, m).expect("lower precision of a valid ring")
    }
    fn lower(&self, a: &CycElem, target: &Self) -> CycElem {
        a.iter().map(|&x| x % target.zm.modulus()).collect()
    }
}
