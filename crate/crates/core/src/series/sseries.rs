use crate::arith::ring::{div_int, PadicRing, Ring};
use crate::arith::zmod::factorial_valuation;
use crate::error::{Error, Result};

/// A power series in `s` truncated after `s^deg`, with coefficients in any
/// ring (truncated `T`-series, cyclotomic integers, ...).
#[derive(Clone, Debug)]
pub struct SSeries<R: Ring> {
    pub ring: R,
    pub coeffs: Vec<R::Elem>,
}

impl<R: Ring> SSeries<R> {
    pub fn new(ring: R, coeffs: Vec<R::Elem>) -> Self {
        assert!(!coeffs.is_empty());
        SSeries { ring, coeffs }
    }

    pub fn one(ring: R, deg: usize) -> Self {
        let mut coeffs = vec![ring.zero(); deg + 1];
        coeffs[0] = ring.one();
        SSeries { ring, coeffs }
    }

    /// Highest stored power of `s`.
    pub fn deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &R::Elem {
        &self.coeffs[k]
    }

    /// Keep only coefficients up to `s^deg`.
    pub fn truncate(&self, deg: usize) -> Self {
        let mut coeffs: Vec<R::Elem> = self.coeffs.iter().take(deg + 1).cloned().collect();
        coeffs.resize(deg + 1, self.ring.zero());
        SSeries::new(self.ring.clone(), coeffs)
    }

    fn same_shape(&self, other: &Self) -> usize {
        self.deg().min(other.deg())
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.same_shape(other);
        let coeffs = (0..=d)
            .map(|k| self.ring.add(&self.coeffs[k], &other.coeffs[k]))
            .collect();
        SSeries::new(self.ring.clone(), coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.same_shape(other);
        let mut coeffs = vec![self.ring.zero(); d + 1];
        for i in 0..=d {
            if self.ring.is_zero(&self.coeffs[i]) {
                continue;
            }
            for j in 0..=d - i {
                self.ring
                    .mul_add_assign(&mut coeffs[i + j], &self.coeffs[i], &other.coeffs[j]);
            }
        }
        SSeries::new(self.ring.clone(), coeffs)
    }

    /// Inverse of a series whose constant term is a unit.
    pub fn inv(&self) -> Result<Self> {
        let b0 = self.ring.inv(&self.coeffs[0]).ok_or(Error::NonUnit)?;
        let d = self.deg();
        let mut out = vec![self.ring.zero(); d + 1];
        out[0] = b0.clone();
        for k in 1..=d {
            let mut acc = self.ring.zero();
            for i in 1..=k {
                self.ring.mul_add_assign(&mut acc, &self.coeffs[i], &out[k - i]);
            }
            out[k] = self.ring.neg(&self.ring.mul(&b0, &acc));
        }
        Ok(SSeries::new(self.ring.clone(), out))
    }

    /// Integer power; negative exponents need a unit constant term.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = SSeries::one(self.ring.clone(), self.deg());
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// `F(c·s)`: the `k`-th coefficient is multiplied by `c^k`.
    pub fn scale_s(&self, c: &R::Elem) -> Self {
        let mut ck = self.ring.one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            coeffs.push(self.ring.mul(x, &ck));
            ck = self.ring.mul(&ck, c);
        }
        SSeries::new(self.ring.clone(), coeffs)
    }

    /// Apply a ring map coefficientwise.
    pub fn map<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> SSeries<S> {
        SSeries::new(ring, self.coeffs.iter().map(f).collect())
    }
}

impl<R: Ring> PartialEq for SSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: PadicRing> SSeries<R> {
    pub fn precision(&self) -> u32 {
        self.ring.precision()
    }

    /// Reduce to a lower p-adic precision.
    pub fn lower(&self, m: u32) -> Self {
        let target = self.ring.with_precision(m);
        let coeffs = self.coeffs.iter().map(|x| self.ring.lower(x, &target)).collect();
        SSeries::new(target, coeffs)
    }
}

/// `exp(Σ_{k≥1} h_k s^k / k)` from the sequence `h_1, ..., h_deg`.
///
/// Uses `k F_k = Σ_{i=1..k} h_i F_{k-i}`; each step divides exactly by `k`
/// and fails with an integrality violation if the division is not exact.
/// The result is certified modulo `p^(M - ord_p(deg!))` and is returned at
/// that precision.
pub fn exp_of_power_sums<R: PadicRing>(ring: &R, h: &[R::Elem]) -> Result<SSeries<R>> {
    let deg = h.len();
    let m = ring.precision();
    let loss = factorial_valuation(ring.prime(), deg as u64);
    if loss >= m {
        return Err(Error::PrecisionUnderflow {
            needed: loss + 1,
            available: m,
        });
    }
    let mut f = vec![ring.one()];
    for k in 1..=deg {
        let mut acc = ring.zero();
        for i in 1..=k {
            ring.mul_add_assign(&mut acc, &h[i - 1], &f[k - i]);
        }
        let (q, _) = div_int(ring, &acc, k as u64).ok_or_else(|| {
            Error::IntegralityViolation(format!("coefficient of s^{k} is not p-integral"))
        })?;
        f.push(q);
    }
    Ok(SSeries::new(ring.clone(), f).lower(m - loss))
}

/// The inverse operation: `h_k` with `F = exp(Σ h_k s^k / k)`, via
/// `h_k = k F_k - Σ_{i=1..k-1} h_i F_{k-i}` (no division, `F_0 = 1`).
pub fn power_sums_of<R: Ring>(f: &SSeries<R>) -> Vec<R::Elem> {
    let ring = &f.ring;
    let mut h: Vec<R::Elem> = Vec::with_capacity(f.deg());
    for k in 1..=f.deg() {
        let mut acc = ring.mul(&ring.from_i64(k as i64), &f.coeffs[k]);
        for i in 1..k {
            let t = ring.mul(&h[i - 1], &f.coeffs[k - i]);
            acc = ring.sub(&acc, &t);
        }
        h.push(acc);
    }
    h
}
