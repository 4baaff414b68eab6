use std::collections::BTreeMap;

use crate::arith::binomial::{binomial_precision, one_plus_t_pow};
use crate::arith::cyclotomic::{binom_mod, CycElem, CycRing};
use crate::arith::ring::{PadicRing, Ring};
use crate::arith::zmod::Zmod;
use crate::error::{Error, Result};
use crate::polytope::laurent::LaurentPoly;
use crate::series::sseries::{exp_of_power_sums, SSeries};
use crate::series::trunc::TRing;

use super::torus::TraceTable;

/// `Σ_t count_t · (1+T)^t` in `Z/p^(M_out)[T]/T^n`.
fn binomial_sum(zm: &Zmod, counts: &BTreeMap<u64, u64>, n: usize) -> Result<(TRing, Vec<u64>)> {
    let ring = TRing::new(zm.with_prec(binomial_precision(zm, n)?), n);
    let out_zm = *ring.base();
    let mut acc = ring.zero();
    for (&t, &c) in counts {
        let (_, pw) = one_plus_t_pow(zm, t, n)?;
        let c = out_zm.reduce_u64(c);
        for (a, x) in acc.iter_mut().zip(&pw) {
            *a = out_zm.add(*a, out_zm.mul(c, *x));
        }
    }
    Ok((ring, acc))
}

/// The T-adic exponential sum `S_f(k, T) = Σ_x (1+T)^(Tr f(x̂))` over the
/// torus of `F_(q^k)`, modulo `(p^(M_out), T^n)`; the ring returned carries
/// `M_out = M - ord_p((n-1)!)`.
pub fn s_f_t(f: &LaurentPoly, k: u32, prec: u32, n: usize) -> Result<(TRing, Vec<u64>)> {
    let table = TraceTable::new(f, k, prec)?;
    binomial_sum(&table.scalars(), &table.distribution(false), n)
}

/// The classical sum `S_(f,ψ)(k) = Σ_x ζ^(Tr f(x̂))` for `ψ` of order `p^m`,
/// in `Z_p[ζ]/p^M`.
pub fn s_f_psi(f: &LaurentPoly, k: u32, m: u32, prec: u32) -> Result<(CycRing, CycElem)> {
    if prec < m {
        return Err(Error::PrecisionRule(format!(
            "traces are needed mod p^{m}, precision {prec} is too small"
        )));
    }
    let ring = CycRing::new(f.ctx().p(), m, prec)?;
    let table = TraceTable::new(f, k, prec)?;
    let zeta = ring.zeta_powers();
    let order = ring.order();
    let zm = ring.scalars();
    let mut acc = ring.zero();
    for (&t, &c) in &table.distribution(false) {
        let term = ring.scale(&zeta[(t % order) as usize], zm.reduce_u64(c));
        acc = ring.add(&acc, &term);
    }
    Ok((ring, acc))
}

/// `S_f(1,T), ..., S_f(deg, T)` in a common ring.
pub fn sums_up_to(f: &LaurentPoly, deg: usize, prec: u32, n: usize) -> Result<(TRing, Vec<Vec<u64>>)> {
    let mut ring = None;
    let mut out = Vec::with_capacity(deg);
    for k in 1..=deg {
        let (r, s) = s_f_t(f, k as u32, prec, n)?;
        ring = Some(r);
        out.push(s);
    }
    let ring = match ring {
        Some(r) => r,
        None => TRing::new(Zmod::new(f.ctx().p(), binomial_precision(&Zmod::new(f.ctx().p(), prec)?, n)?)?, n),
    };
    Ok((ring, out))
}

/// `L_f(s,T) = exp(Σ S_f(k,T) s^k / k)` up to `s^deg`.
pub fn l_function(f: &LaurentPoly, deg: usize, prec: u32, n: usize) -> Result<SSeries<TRing>> {
    let (ring, sums) = sums_up_to(f, deg, prec, n)?;
    exp_of_power_sums(&ring, &sums)
}

/// `C_f(s,T) = exp(-Σ (q^k-1)^(-n) S_f(k,T) s^k / k)` up to `s^deg`.
pub fn c_function(f: &LaurentPoly, deg: usize, prec: u32, n: usize) -> Result<SSeries<TRing>> {
    let (ring, sums) = sums_up_to(f, deg, prec, n)?;
    let h = c_power_sums(f, &ring, &sums);
    exp_of_power_sums(&ring, &h)
}

/// `-(q^k - 1)^(-n) S_f(k, T)` for `k = 1, 2, ...`.
fn c_power_sums(f: &LaurentPoly, ring: &TRing, sums: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let zm = *ring.base();
    let q = f.ctx().size();
    sums.iter()
        .enumerate()
        .map(|(i, s)| {
            let qk1 = zm.sub(zm.pow(zm.reduce_u64(q), i as u64 + 1), 1);
            let w = zm.inv(zm.pow(qk1, f.nvars() as u64)).expect("q^k - 1 is a unit");
            ring.scale(&ring.neg(s), w)
        })
        .collect()
}

/// `L_f(s,T)` from its Euler product over closed points of the torus:
/// `Π_x (1 - (1+T)^(Tr f(x̂)) s^deg(x))^(-1)`, grouping the points of each
/// degree by trace. No division occurs, so only the binomial precision
/// loss applies.
pub fn l_function_euler(f: &LaurentPoly, deg: usize, prec: u32, n: usize) -> Result<SSeries<TRing>> {
    let zm = Zmod::new(f.ctx().p(), prec)?;
    let ring = TRing::new(zm.with_prec(binomial_precision(&zm, n)?), n);
    let mut acc = SSeries::one(ring.clone(), deg);
    for d in 1..=deg {
        let table = TraceTable::new(f, d as u32, prec)?;
        for (t, count) in table.distribution(true) {
            if count % d as u64 != 0 {
                return Err(Error::Internal(format!(
                    "{count} points of degree {d} do not form whole Frobenius orbits"
                )));
            }
            let (_, pw) = one_plus_t_pow(&zm, t, n)?;
            let mut factor = SSeries::one(ring.clone(), deg);
            factor.coeffs[d] = ring.neg(&pw);
            acc = acc.mul(&factor.inv()?.pow((count / d as u64) as i64)?);
        }
    }
    Ok(acc)
}

/// `L = Π_{i=0..n} C(q^i s)^((-1)^(n-i-1) binom(n,i))`.
pub fn l_from_c<R: PadicRing>(c: &SSeries<R>, nvars: usize, q: u64) -> Result<SSeries<R>> {
    let ring = &c.ring;
    let mut acc = SSeries::one(ring.clone(), c.deg());
    let mut qi = ring.one();
    let qr = ring.from_i64(q as i64);
    for i in 0..=nvars {
        let b = binomial_i64(nvars as u64, i as u64);
        let sign = if (nvars - i) % 2 == 1 { 1 } else { -1 };
        acc = acc.mul(&c.scale_s(&qi).pow(sign * b)?);
        qi = ring.mul(&qi, &qr);
    }
    Ok(acc)
}

/// `C` from `L`, through `C^((-1)^(n-1)) = Π_{j≥0} L(q^j s)^binom(n+j-1, j)`.
/// Factors with `a·j ≥ M` are `≡ 1` beyond the constant term and are
/// skipped.
pub fn c_from_l<R: PadicRing>(l: &SSeries<R>, nvars: usize, q: u64) -> Result<SSeries<R>> {
    let ring = &l.ring;
    let p = ring.prime();
    let a = {
        let (mut a, mut x) = (0u32, q);
        while x > 1 {
            x /= p;
            a += 1;
        }
        a
    };
    let j_max = ring.precision().div_ceil(a);
    let qr = ring.from_i64(q as i64);
    let mut acc = SSeries::one(ring.clone(), l.deg());
    let mut qj = ring.one();
    for j in 0..j_max as u64 {
        let b = binomial_i64(nvars as u64 + j - 1, j);
        acc = acc.mul(&l.scale_s(&qj).pow(b)?);
        qj = ring.mul(&qj, &qr);
    }
    if nvars.is_multiple_of(2) {
        acc.inv()
    } else {
        Ok(acc)
    }
}

fn binomial_i64(n: u64, k: u64) -> i64 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as i64
}

/// Substitute `T = π_ψ` into a truncated `T`-series. The discarded terms
/// `T^j`, `j ≥ n`, have `ord_π ≥ n`, so the value is certified modulo
/// `p^M` only when `n ≥ e·M`; otherwise this is refused.
pub fn specialize(t_ring: &TRing, x: &[u64], m: u32) -> Result<(CycRing, CycElem)> {
    let zm = *t_ring.base();
    let cyc = CycRing::new(zm.p(), m, zm.prec())?;
    if (t_ring.len() as u64) < cyc.ord_cap() {
        return Err(Error::PrecisionRule(format!(
            "T-truncation {} is below e·M = {}",
            t_ring.len(),
            cyc.ord_cap()
        )));
    }
    let pi = cyc.uniformizer();
    let mut acc = cyc.zero();
    for &c in x.iter().rev() {
        acc = cyc.mul(&acc, &pi);
        acc[0] = zm.add(acc[0], c);
    }
    Ok((cyc, acc))
}

/// Coefficientwise [`specialize`].
pub fn specialize_series(s: &SSeries<TRing>, m: u32) -> Result<SSeries<CycRing>> {
    let mut ring = None;
    let mut coeffs = Vec::with_capacity(s.coeffs.len());
    for c in &s.coeffs {
        let (r, v) = specialize(&s.ring, c, m)?;
        ring = Some(r);
        coeffs.push(v);
    }
    Ok(SSeries::new(ring.expect("series has a constant term"), coeffs))
}

/// `L_(f,ψ)(s)` computed directly from the classical sums.
pub fn l_function_psi(f: &LaurentPoly, deg: usize, m: u32, prec: u32) -> Result<SSeries<CycRing>> {
    let mut ring = None;
    let mut sums = Vec::with_capacity(deg);
    for k in 1..=deg {
        let (r, s) = s_f_psi(f, k as u32, m, prec)?;
        ring = Some(r);
        sums.push(s);
    }
    let ring = match ring {
        Some(r) => r,
        None => CycRing::new(f.ctx().p(), m, prec)?,
    };
    exp_of_power_sums(&ring, &sums)
}

/// `((1+T)^(p^m) - 1)/T` over `Z/p^M`, monic of degree `p^m - 1`.
pub fn congruence_modulus(zm: &Zmod, m: u32) -> Vec<u64> {
    let pm = zm.p().pow(m);
    (1..=pm).map(|j| binom_mod(zm, pm, j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{FieldCtx, Fq};
    use std::sync::Arc;

    fn x_over(p: u64) -> LaurentPoly {
        let ctx = Arc::new(FieldCtx::new(p, 1).unwrap());
        LaurentPoly::from_terms(ctx, &[(Fq(1), vec![1])]).unwrap()
    }

    #[test]
    fn sum_for_x_over_f2() {
        let (_, s) = s_f_t(&x_over(2), 1, 6, 4).unwrap();
        assert_eq!(s, vec![1, 1, 0, 0]);
    }

    #[test]
    fn sum_for_x_over_f3() {
        // (1+T) + (1+T)^-1 = 2 + T^2 - T^3 + ...
        let (r, s) = s_f_t(&x_over(3), 1, 6, 4).unwrap();
        let m = r.base().modulus();
        assert_eq!(s, vec![2, 0, 1, m - 1]);
    }

    #[test]
    fn psi_sum_for_x_over_f3() {
        let (r, s) = s_f_psi(&x_over(3), 1, 1, 5).unwrap();
        assert_eq!(s, r.from_i64(-1));
    }

    #[test]
    fn modulus_at_level_one() {
        let zm = Zmod::new(5, 3).unwrap();
        assert_eq!(congruence_modulus(&zm, 1), vec![5, 10, 10, 5, 1]);
    }

    #[test]
    fn specialize_one_plus_t() {
        let r = TRing::new(Zmod::new(3, 2).unwrap(), 4);
        let (c, z) = specialize(&r, &[1, 1, 0, 0], 1).unwrap();
        assert_eq!(z, c.zeta());
        let short = TRing::new(Zmod::new(3, 2).unwrap(), 3);
        assert!(matches!(specialize(&short, &[1, 1, 0], 1), Err(Error::PrecisionRule(_))));
    }

    fn parsed(text: &str, p: u64, a: u32) -> LaurentPoly {
        let ctx = Arc::new(FieldCtx::new(p, a).unwrap());
        crate::parse::parse_laurent(text, &ctx, None).unwrap()
    }

    fn same(a: &SSeries<TRing>, b: &SSeries<TRing>) -> bool {
        let m = a.precision().min(b.precision());
        a.lower(m) == b.lower(m)
    }

    #[test]
    fn euler_product_matches_exponential() {
        for (text, p, a) in [("x1 + x2 + x1^-1*x2^-1", 2, 1), ("x1^3 + x1", 3, 1), ("x1", 2, 2)] {
            let f = parsed(text, p, a);
            let l = l_function(&f, 3, 20, 8).unwrap();
            let e = l_function_euler(&f, 3, 20, 8).unwrap();
            assert!(same(&l, &e), "{text}");
        }
    }

    #[test]
    fn one_variable_l_is_c_over_shifted_c() {
        let f = parsed("x1^2 + x1", 3, 1);
        let c = c_function(&f, 4, 20, 8).unwrap();
        let l = l_function(&f, 4, 20, 8).unwrap();
        let via_c = c.mul(&c.scale_s(&c.ring.from_i64(3)).inv().unwrap());
        assert!(same(&via_c, &l));
        assert!(same(&l_from_c(&c, 1, 3).unwrap(), &l));
    }

    #[test]
    fn l_c_round_trip() {
        for (text, p) in [("x1 + x2 + x1^-1*x2^-1", 3), ("x1^3", 7), ("x1", 5)] {
            let f = parsed(text, p, 1);
            let n = f.nvars();
            let c = c_function(&f, 4, 20, 8).unwrap();
            let l = l_function(&f, 4, 20, 8).unwrap();
            let back = c_from_l(&l, n, p).unwrap();
            assert!(same(&back, &c), "{text}");
            assert!(same(&l_from_c(&c, n, p).unwrap(), &l), "{text}");
        }
    }

    #[test]
    fn c_at_t_zero_is_one_minus_s() {
        let f = parsed("x1 + x2 + x1^-1*x2^-1", 3, 1);
        let c = c_function(&f, 4, 12, 6).unwrap();
        let zm = *c.ring.base();
        let constants: Vec<u64> = c.coeffs.iter().map(|x| x[0]).collect();
        assert_eq!(constants, vec![1, zm.neg(1), 0, 0, 0]);
    }

    #[test]
    fn specialization_recovers_classical_sums() {
        for (text, p, a, m) in [("x1 + x2 + x1^-1*x2^-1", 3, 1, 1), ("x1^2 + x1", 2, 1, 2), ("x1", 2, 2, 1)] {
            let f = parsed(text, p, a);
            let cyc_cap = CycRing::new(p, m, 1).unwrap().ramification();
            for k in 1..=2 {
                // enough T-terms to survive the binomial loss at precision 6
                let mut n = 6 * cyc_cap;
                let (tr, s) = loop {
                    let (tr, s) = s_f_t(&f, k, 30, n).unwrap();
                    if n as u64 >= CycRing::new(p, m, tr.base().prec()).unwrap().ord_cap() {
                        break (tr, s);
                    }
                    n += cyc_cap;
                };
                let (cyc, v) = specialize(&tr, &s, m).unwrap();
                let (dr, d) = s_f_psi(&f, k, m, 30).unwrap();
                assert_eq!(v, dr.lower(&d, &cyc), "{text}, k = {k}");
            }
        }
    }
}
