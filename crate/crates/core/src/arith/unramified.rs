use std::sync::Arc;

use super::field::{FieldCtx, Fq};
use super::ring::{PadicRing, Ring};
use super::zmod::Zmod;
use crate::error::Result;

/// Elements of `Z_q / p^M` in the power basis `1, y, ..., y^(d-1)`.
pub type ZqElem = Vec<u64>;

/// The unramified ring `Z_q / p^M = (Z/p^M)[y]/(H(y))` where `H` lifts the
/// defining polynomial of the residue field: if `y^d ≡ Σ r_i y^i (mod p)`
/// with `0 ≤ r_i < p`, then `H = y^d - Σ r_i y^i`.
///
/// `FieldCtx::new(p, a*k)` gives `Z_{q^k}`; the same type covers every
/// level of the tower.
#[derive(Clone, Debug)]
pub struct ZqRing {
    zm: Zmod,
    field: Arc<FieldCtx>,
    modpoly: Vec<u64>,
    trace_basis: Vec<u64>,
}

impl ZqRing {
    pub fn new(field: Arc<FieldCtx>, prec: u32) -> Result<Self> {
        let zm = Zmod::new(field.p(), prec)?;
        // lift the reduction rule y^d = Σ r_i y^i with 0 <= r_i < p, so that
        // H = y^d - Σ r_i y^i
        let p = field.p();
        let d = field.degree() as usize;
        let modpoly: Vec<u64> = field
            .defining_poly()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i == d { zm.one() } else { zm.neg((p - c) % p) })
            .collect();
        let mut ring = ZqRing {
            zm,
            field,
            modpoly,
            trace_basis: Vec::new(),
        };
        ring.trace_basis = ring.multiplication_traces();
        Ok(ring)
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.modpoly.len() - 1
    }

    /// `Tr(y^i)` as the trace of multiplication by `y^i`: the sum over `j` of
    /// the `y^j` coefficient of `y^(i+j) mod H`.
    fn multiplication_traces(&self) -> Vec<u64> {
        let d = self.degree();
        (0..d)
            .map(|i| {
                let mut yi = vec![0; d];
                yi[i] = self.zm.one();
                let mut t = 0;
                let mut basis = vec![0; d];
                for j in 0..d {
                    basis.iter_mut().for_each(|c| *c = 0);
                    basis[j] = self.zm.one();
                    let prod = self.mul(&yi, &basis);
                    t = self.zm.add(t, prod[j]);
                }
                t
            })
            .collect()
    }

    /// Trace down to `Z_p`, as the trace of the multiplication map.
    pub fn trace(&self, x: &ZqElem) -> u64 {
        x.iter()
            .zip(&self.trace_basis)
            .fold(0, |acc, (&c, &t)| self.zm.add(acc, self.zm.mul(c, t)))
    }

    /// Any lift of a residue-field element (digits read as integers).
    pub fn naive_lift(&self, x: Fq) -> ZqElem {
        self.field.digits(x)
    }

    /// Teichmüller lift: the unique `t` with `t^q = t` and `t ≡ x mod p`.
    ///
    /// Iterating `t ↦ t^q` from any lift gains one p-adic digit per step, so
    /// `M` iterations suffice.
    pub fn teichmuller(&self, x: Fq) -> ZqElem {
        let q = self.field.size();
        let mut t = self.naive_lift(x);
        for _ in 0..self.zm.prec() {
            t = self.pow(&t, q);
        }
        t
    }

    /// Teichmüller lifts of `g^0, g^1, ..., g^(q-2)` for the field generator
    /// `g`, by repeated multiplication of the lifted generator.
    pub fn teichmuller_powers(&self) -> Vec<ZqElem> {
        let g = self.teichmuller(self.field.generator());
        let n = self.field.order() as usize;
        let mut out = Vec::with_capacity(n);
        let mut cur = self.one();
        for _ in 0..n {
            let next = self.mul(&cur, &g);
            out.push(cur);
            cur = next;
        }
        out
    }

    /// Reduction mod `p`.
    pub fn residue(&self, x: &ZqElem) -> Fq {
        let p = self.zm.p();
        let d: Vec<u64> = x.iter().map(|c| c % p).collect();
        self.field.from_digits(&d)
    }

    /// Embed a `Z/p^M` scalar.
    pub fn scalar(&self, c: u64) -> ZqElem {
        let mut v = vec![0; self.degree()];
        v[0] = c;
        v
    }
}

impl Ring for ZqRing {
    type Elem = ZqElem;

    fn zero(&self) -> ZqElem {
        vec![0; self.degree()]
    }
    fn one(&self) -> ZqElem {
        self.scalar(self.zm.one())
    }
    fn from_i64(&self, v: i64) -> ZqElem {
        self.scalar(self.zm.reduce_i64(v))
    }
    fn add(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        a.iter().zip(b).map(|(&x, &y)| self.zm.add(x, y)).collect()
    }
    fn sub(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        a.iter().zip(b).map(|(&x, &y)| self.zm.sub(x, y)).collect()
    }
    fn neg(&self, a: &ZqElem) -> ZqElem {
        a.iter().map(|&x| self.zm.neg(x)).collect()
    }
    fn mul(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        let d = self.degree();
        if d == 1 {
            return vec![self.zm.mul(a[0], b[0])];
        }
        let m = self.zm.modulus() as u128;
        let mut prod = vec![0u128; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % m;
            }
        }
        for i in (d..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                let sub = c * self.modpoly[j] as u128 % m;
                prod[i - d + j] = (prod[i - d + j] + m - sub) % m;
            }
        }
        prod[..d].iter().map(|&c| c as u64).collect()
    }
    fn is_zero(&self, a: &ZqElem) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn inv(&self, a: &ZqElem) -> Option<ZqElem> {
        // inverse mod p from the field, then Newton x <- x(2 - a x)
        let r = self.field.inv(self.residue(a))?;
        let mut x = self.naive_lift(r);
        let two = self.from_i64(2);
        for _ in 0..=(32 - self.zm.prec().leading_zeros()) {
            x = self.mul(&x, &self.sub(&two, &self.mul(a, &x)));
        }
        Some(x)
    }
}

impl PadicRing for ZqRing {
    fn scalars(&self) -> Zmod {
        self.zm
    }
    fn scale(&self, a: &ZqElem, c: u64) -> ZqElem {
        a.iter().map(|&x| self.zm.mul(x, c)).collect()
    }
    fn div_p_pow(&self, a: &ZqElem, v: u32) -> Option<ZqElem> {
        a.iter().map(|&x| self.zm.div_p_pow(x, v)).collect()
    }
    fn valuation(&self, a: &ZqElem) -> Option<u32> {
        a.iter().filter_map(|&x| self.zm.val(x)).min()
    }
    fn with_precision(&self, m: u32) -> Self {
        ZqRing::new(self.field.clone(), m).expect("lower precision of a valid ring")
    }
    fn lower(&self, a: &ZqElem, target: &Self) -> ZqElem {
        a.iter().map(|&x| x % target.zm.modulus()).collect()
    }
}
