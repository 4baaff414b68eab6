use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::ring::Ring;
use crate::arith::zmod::Zmod;
use crate::error::{Error, Result};
use crate::series::trunc::{SeriesRing, TRing};

/// `E(π) = exp(Σ π^(p^i)/p^i)` modulo `π^N`, with exact rational
/// coefficients.
#[derive(Clone, Debug)]
pub struct ArtinHasse {
    pub p: u64,
    pub coeffs: Vec<BigRational>,
}

/// `E(π) mod π^n`. From `E' = E·Σ π^(p^i - 1)`: `k·e_k = Σ_{p^i ≤ k} e_(k-p^i)`.
pub fn artin_hasse(p: u64, n: usize) -> Result<ArtinHasse> {
    if n == 0 {
        return Err(Error::InvalidInput("Artin-Hasse series needs at least one term".into()));
    }
    let mut coeffs: Vec<BigRational> = vec![BigRational::one()];
    let pb = BigInt::from(p);
    for k in 1..n {
        let mut acc = BigRational::zero();
        let mut pp = 1usize;
        while pp <= k {
            acc += &coeffs[k - pp];
            pp = match pp.checked_mul(p as usize) {
                Some(v) => v,
                None => break,
            };
        }
        let c = acc / BigRational::from_integer(BigInt::from(k));
        if (c.denom() % &pb).is_zero() {
            return Err(Error::IntegralityViolation(format!(
                "Artin-Hasse coefficient {k} = {c} is not {p}-integral"
            )));
        }
        coeffs.push(c);
    }
    Ok(ArtinHasse { p, coeffs })
}

impl ArtinHasse {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients reduced into `Z/p^M`.
    pub fn residues(&self, zm: &Zmod) -> Vec<u64> {
        self.coeffs.iter().map(|c| rational_residue(zm, c)).collect()
    }
}

/// Image of a p-integral rational in `Z/p^M`.
pub fn rational_residue(zm: &Zmod, c: &BigRational) -> u64 {
    let m = BigInt::from(zm.modulus());
    let reduce = |x: &BigInt| -> u64 {
        let r = ((x % &m) + &m) % &m;
        u64::try_from(r).expect("reduced residue fits")
    };
    let num = reduce(c.numer());
    let den = reduce(c.denom());
    zm.mul(num, zm.inv(den).expect("denominator is a unit"))
}

/// The uniformizer `π` as a series in `T`, the inverse of `T = E(π) - 1`.
#[derive(Clone, Debug)]
pub struct PiOfT {
    pub ring: TRing,
    pub coeffs: Vec<u64>,
}

/// Reversion of `E(π) - 1` modulo `(p^M, T^N)`, checked by substituting back.
pub fn pi_of_t(p: u64, prec: u32, n: usize) -> Result<PiOfT> {
    let zm = Zmod::new(p, prec)?;
    let ring = SeriesRing::new(zm, n.max(1));
    let e = e_minus_one(&ring, &artin_hasse(p, ring.len())?);
    // π ← T - (e(π) - π); each pass fixes one more coefficient
    let t = ring.gen();
    let mut pi = t.clone();
    for _ in 0..ring.len() {
        let ep = ring.compose(&e, &pi);
        pi = ring.sub(&t, &ring.sub(&ep, &pi));
    }
    if ring.compose(&e, &pi) != t {
        return Err(Error::Internal("reversion of E(π) - 1 failed to round-trip".into()));
    }
    Ok(PiOfT { ring, coeffs: pi })
}

/// `E(π) - 1` in a series ring over `Z/p^M`.
pub fn e_minus_one(ring: &TRing, ah: &ArtinHasse) -> Vec<u64> {
    let zm = ring.base();
    let mut v = ring.zero();
    for (i, c) in ah.coeffs.iter().enumerate().take(ring.len()).skip(1) {
        v[i] = rational_residue(zm, c);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn leading_terms() {
        for p in [2, 3, 5, 7] {
            let e = artin_hasse(p, 4).unwrap();
            assert_eq!(e.coeffs[0], q(1, 1));
            assert_eq!(e.coeffs[1], q(1, 1));
        }
    }

    #[test]
    fn p2_by_direct_exponential() {
        // exp(π + π²/2 + π⁴/4) expanded by hand-free brute force
        let n = 8;
        let s: Vec<BigRational> = (0..n)
            .map(|i| match i {
                1 => q(1, 1),
                2 => q(1, 2),
                4 => q(1, 4),
                _ => q(0, 1),
            })
            .collect();
        let mut exp = vec![q(0, 1); n];
        exp[0] = q(1, 1);
        let mut term = exp.clone();
        for k in 1..n {
            let mut next = vec![q(0, 1); n];
            for i in 0..n {
                for j in 0..n - i {
                    next[i + j] += &term[i] * &s[j];
                }
            }
            term = next.into_iter().map(|c| c / q(k as i64, 1)).collect();
            for i in 0..n {
                exp[i] += &term[i];
            }
        }
        let e = artin_hasse(2, n).unwrap();
        assert_eq!(e.coeffs, exp);
        assert_eq!(e.coeffs[2], q(1, 1));
    }

    #[test]
    fn matches_exp_below_p() {
        let e = artin_hasse(7, 7).unwrap();
        let mut fact = 1i64;
        for k in 0..7 {
            if k > 0 {
                fact *= k as i64;
            }
            assert_eq!(e.coeffs[k], q(1, fact));
        }
    }

    #[test]
    fn reversion_small_coefficients() {
        let r = pi_of_t(2, 20, 6).unwrap();
        let zm = *r.ring.base();
        assert_eq!(r.coeffs[1], 1);
        assert_eq!(zm.signed(r.coeffs[2]), -1);
        assert_eq!(r.coeffs[3], zm.mul(4, zm.inv(3).unwrap()));
    }

    #[test]
    fn reversion_is_log_below_p() {
        let r = pi_of_t(7, 6, 7).unwrap();
        let zm = *r.ring.base();
        for k in 1..7u64 {
            let sign = if k % 2 == 1 { 1 } else { zm.neg(1) };
            assert_eq!(r.coeffs[k as usize], zm.mul(sign, zm.inv(k).unwrap()));
        }
    }
}
