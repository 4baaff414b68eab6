use std::collections::BTreeMap;

use num_integer::Integer;

use super::expansion::{expand, EfExpansion};
use crate::arith::ring::Ring;
use crate::arith::unramified::{ZqElem, ZqRing};
use crate::error::{Error, Result};
use crate::polytope::degree::DegreeData;
use crate::polytope::laurent::LaurentPoly;
use crate::series::polygon::Q;
use crate::series::sseries::SSeries;
use crate::series::trunc::SeriesRing;

/// Series in `ρ = π^(1/D)` over `Z_q`.
pub type RhoRing = SeriesRing<ZqRing>;

/// A Dwork operator truncated to the basis `π^deg(u) x^u`, `deg(u) ≤ B`.
/// Entries are `ρ`-series known modulo `π^n_pi`.
#[derive(Clone, Debug)]
pub struct DworkMatrix {
    pub p: u64,
    /// Number of `ψ_p` steps: 1 for `ψ_p∘E_f`, `a` for `ψ^a`.
    pub steps: u32,
    pub den: i64,
    /// Basis points with their degree numerators, sorted by (degree, lex).
    pub basis: Vec<(Vec<i64>, i64)>,
    /// `D·B`, rounded down.
    pub basis_num: i64,
    pub n_pi: usize,
    pub ring: RhoRing,
    pub entries: Vec<Vec<Vec<ZqElem>>>,
}

impl DworkMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Exponent of `ρ` up to which the characteristic series and power
    /// traces of the truncation agree with those of the full operator: a
    /// row outside the basis has degree at least `(basis_num+1)/D`, so all
    /// its entries are divisible by `π^((p-1)(basis_num+1)/D)`.
    pub fn certified_rho(&self) -> usize {
        let excluded = (self.p as i64 - 1) * (self.basis_num + 1);
        (self.den as usize * self.n_pi).min(excluded as usize)
    }

    /// [`Self::certified_rho`] as an exponent of `π`.
    pub fn certified_pi(&self) -> Q {
        Q::new(self.certified_rho() as i64, self.den)
    }
}

/// Matrix of `ψ^a = ψ_p^a ∘ Π_(i<a) E_(f^σ^i)(x^(p^i))` on the basis of
/// degree at most `basis`.
pub fn psi_a_matrix(f: &LaurentPoly, basis: Q, prec: u32, n_pi: usize) -> Result<DworkMatrix> {
    let a = f.ctx().degree();
    if a > 2 {
        return Err(Error::Unsupported(format!(
            "the operator route handles fields of degree 1 or 2, not {a}"
        )));
    }
    let p = f.ctx().p() as i64;
    if basis * Q::from(p - 1) < Q::from(n_pi as i64) {
        return Err(Error::BasisTooSmall {
            bound: basis.to_string(),
            needed: Q::new(n_pi as i64, p - 1).to_string(),
        });
    }
    operator_matrix(f, a, basis, prec, n_pi)
}

/// Matrix of the `Z_q`-linear operator `ψ_p∘E_f`, without the `σ^(-1)`.
pub fn psi_p_ef_matrix(f: &LaurentPoly, basis: Q, prec: u32, n_pi: usize) -> Result<DworkMatrix> {
    operator_matrix(f, 1, basis, prec, n_pi)
}

fn operator_matrix(f: &LaurentPoly, steps: u32, basis: Q, prec: u32, n_pi: usize) -> Result<DworkMatrix> {
    if n_pi == 0 {
        return Err(Error::InvalidInput("π-precision must be positive".into()));
    }
    let p = f.ctx().p();
    let dd = DegreeData::new(f)?;
    let den = dd.den;
    let basis_num = Integer::div_floor(&(basis.numer() * den), basis.denom());
    if basis_num < 0 {
        return Err(Error::InvalidInput("basis degree must be non-negative".into()));
    }
    let points = dd.lattice_points_upto(basis_num);
    let pi_len = n_pi + Integer::div_ceil(&basis_num, &den) as usize;
    let zq = ZqRing::new(f.ctx().clone(), prec)?;
    let rho_len = den as usize * n_pi;
    let ring = RhoRing::with_den(zq.clone(), rho_len, den as u32);
    let g = Product::new(f, &zq, steps, pi_len)?;
    let scale = (p as i64).pow(steps);
    let mut cache: BTreeMap<Vec<i64>, Option<Vec<ZqElem>>> = BTreeMap::new();

    let mut entries = Vec::with_capacity(points.len());
    for (u, du) in &points {
        let mut row = Vec::with_capacity(points.len());
        for (v, dv) in &points {
            let w: Vec<i64> = u.iter().zip(v).map(|(x, y)| scale * x - y).collect();
            let mut entry = ring.zero();
            if dd.in_cone(&w) {
                let gw = cache.entry(w.clone()).or_insert_with(|| g.coeff(&w));
                if let Some(s) = gw {
                    for (i, c) in s.iter().enumerate() {
                        if zq.is_zero(c) {
                            continue;
                        }
                        let j = den * i as i64 + dv - du;
                        if j < 0 {
                            return Err(Error::DivisionNotExact(format!(
                                "coefficient of x^{w:?} has a π^{i} term below the basis weight"
                            )));
                        }
                        if (j as usize) < rho_len {
                            entry[j as usize] = c.clone();
                        }
                    }
                }
            }
            if let Some(o) = ring.ord(&entry) {
                if (o as i64) < (p as i64 - 1) * du {
                    return Err(Error::TheoremViolation(format!(
                        "entry ({u:?}, {v:?}) has π-order {o}/{den} below (p-1)·deg = {}/{den}",
                        (p as i64 - 1) * du
                    )));
                }
            }
            row.push(entry);
        }
        entries.push(row);
    }
    Ok(DworkMatrix {
        p,
        steps,
        den,
        basis: points,
        basis_num,
        n_pi,
        ring,
        entries,
    })
}

/// `g = Π_(i<steps) E_(f^σ^i)(x^(p^i))` with coefficients computed on demand.
struct Product {
    zq: ZqRing,
    p: i64,
    pi_len: usize,
    factors: Vec<EfExpansion>,
}

impl Product {
    fn new(f: &LaurentPoly, zq: &ZqRing, steps: u32, pi_len: usize) -> Result<Self> {
        if steps == 0 || steps > 2 {
            return Err(Error::Unsupported(format!("{steps} Frobenius steps")));
        }
        let factors = (0..steps)
            .map(|i| expand(&f.frobenius_twist(i), zq, pi_len))
            .collect::<Result<Vec<_>>>()?;
        Ok(Product {
            zq: zq.clone(),
            p: f.ctx().p() as i64,
            pi_len,
            factors,
        })
    }

    fn coeff(&self, w: &[i64]) -> Option<Vec<ZqElem>> {
        match self.factors.as_slice() {
            [e] => e.e(w).cloned(),
            [e0, e1] => {
                let zq = &self.zq;
                let mut acc = vec![zq.zero(); self.pi_len];
                let mut any = false;
                for (v2, s2) in &e1.coeffs {
                    let v1: Vec<i64> = w.iter().zip(v2).map(|(x, y)| x - self.p * y).collect();
                    let Some(s1) = e0.e(&v1) else { continue };
                    any = true;
                    for (i, a) in s1.iter().enumerate() {
                        if zq.is_zero(a) {
                            continue;
                        }
                        for (j, b) in s2.iter().enumerate().take(self.pi_len - i) {
                            zq.mul_add_assign(&mut acc[i + j], a, b);
                        }
                    }
                }
                any.then_some(acc)
            }
            _ => unreachable!(),
        }
    }
}

/// `det(1 - A s)` modulo `s^(deg+1)` without divisions: bordering the
/// leading block gives
/// `det(1 - A_r s) = det(1 - A_(r-1) s)·(1 - a_rr s - Σ_k R A_(r-1)^k C s^(k+2))`.
pub fn det_one_minus_s<R: Ring>(ring: &R, a: &[Vec<R::Elem>], deg: usize) -> Vec<R::Elem> {
    let mut q = vec![ring.zero(); deg + 1];
    q[0] = ring.one();
    for r in 0..a.len() {
        let h = border_factor(ring, a, r, deg);
        q = poly_mul_trunc(ring, &q, &h, deg);
    }
    q
}

/// `det A_r` for each leading principal `r × r` block, `r = 1..=n`.
pub fn leading_minors<R: Ring>(ring: &R, a: &[Vec<R::Elem>]) -> Vec<R::Elem> {
    let mut q = vec![ring.one()];
    let mut out = Vec::with_capacity(a.len());
    for r in 0..a.len() {
        let h = border_factor(ring, a, r, r + 1);
        q.push(ring.zero());
        q = poly_mul_trunc(ring, &q, &h, r + 1);
        let top = q[r + 1].clone();
        out.push(if r % 2 == 0 { ring.neg(&top) } else { top });
    }
    out
}

fn border_factor<R: Ring>(ring: &R, a: &[Vec<R::Elem>], r: usize, deg: usize) -> Vec<R::Elem> {
    let mut h = vec![ring.zero(); deg + 1];
    h[0] = ring.one();
    if deg >= 1 {
        h[1] = ring.neg(&a[r][r]);
    }
    let mut v: Vec<R::Elem> = (0..r).map(|i| a[i][r].clone()).collect();
    for k in 2..=deg {
        if r == 0 {
            break;
        }
        let mut dot = ring.zero();
        for (j, vj) in v.iter().enumerate() {
            ring.mul_add_assign(&mut dot, &a[r][j], vj);
        }
        h[k] = ring.neg(&dot);
        if k < deg {
            v = (0..r)
                .map(|i| {
                    let mut acc = ring.zero();
                    for (j, vj) in v.iter().enumerate() {
                        ring.mul_add_assign(&mut acc, &a[i][j], vj);
                    }
                    acc
                })
                .collect();
        }
    }
    h
}

fn poly_mul_trunc<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem], deg: usize) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); deg + 1];
    for (i, x) in a.iter().enumerate().take(deg + 1) {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(deg + 1 - i) {
            ring.mul_add_assign(&mut out[i + j], x, y);
        }
    }
    out
}

/// `Tr(A^k)`.
pub fn trace_of_power<R: Ring>(ring: &R, a: &[Vec<R::Elem>], k: u32) -> R::Elem {
    let n = a.len();
    if k == 0 {
        return ring.from_i64(n as i64);
    }
    let mut pw: Vec<Vec<R::Elem>> = a.to_vec();
    for _ in 2..k {
        pw = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = ring.zero();
                        for l in 0..n {
                            ring.mul_add_assign(&mut acc, &pw[i][l], &a[l][j]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
    }
    let mut acc = ring.zero();
    if k == 1 {
        for (i, row) in a.iter().enumerate() {
            ring.add_assign(&mut acc, &row[i]);
        }
    } else {
        for i in 0..n {
            for l in 0..n {
                ring.mul_add_assign(&mut acc, &pw[i][l], &a[l][i]);
            }
        }
    }
    acc
}

/// `det(1 - ψ^a s)` of the truncated operator, up to `s^deg_s`. Coefficients
/// are certified modulo `ρ^certified_rho()`.
pub fn char_series(mx: &DworkMatrix, deg_s: usize) -> SSeries<RhoRing> {
    let coeffs = det_one_minus_s(&mx.ring, &mx.entries, deg_s);
    SSeries::new(mx.ring.clone(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::zmod::Zmod;

    fn zm() -> Zmod {
        Zmod::new(101, 1).unwrap()
    }

    // permutation-expansion determinant as an oracle
    fn det_oracle(a: &[Vec<i64>]) -> i64 {
        let n = a.len();
        if n == 0 {
            return 1;
        }
        let mut total = 0;
        for j in 0..n {
            let minor: Vec<Vec<i64>> = a[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            total += sign * a[0][j] * det_oracle(&minor);
        }
        total
    }

    fn lift(a: &[Vec<i64>]) -> Vec<Vec<u64>> {
        let z = zm();
        a.iter().map(|r| r.iter().map(|&x| z.reduce_i64(x)).collect()).collect()
    }

    #[test]
    fn small_cases() {
        let z = zm();
        assert_eq!(det_one_minus_s(&z, &[], 3), vec![1, 0, 0, 0]);
        assert_eq!(det_one_minus_s(&z, &lift(&[vec![7]]), 2), vec![1, z.neg(7), 0]);
        let zero = lift(&[vec![0, 0], vec![0, 0]]);
        assert_eq!(det_one_minus_s(&z, &zero, 2), vec![1, 0, 0]);
    }

    #[test]
    fn matches_principal_minor_sums() {
        let z = zm();
        let a = vec![vec![2, -1, 3, 0], vec![5, 4, -2, 1], vec![0, 7, 1, -3], vec![1, 1, 6, 2]];
        let c = det_one_minus_s(&z, &lift(&a), 4);
        // coefficient of s^k is (-1)^k times the sum of principal k-minors
        for (k, ck) in c.iter().enumerate() {
            let mut sum = 0i64;
            for mask in 0u32..16 {
                if mask.count_ones() as usize != k {
                    continue;
                }
                let idx: Vec<usize> = (0..4).filter(|i| mask >> i & 1 == 1).collect();
                let sub: Vec<Vec<i64>> = idx.iter().map(|&i| idx.iter().map(|&j| a[i][j]).collect()).collect();
                sum += det_oracle(&sub);
            }
            let expected = if k % 2 == 0 { sum } else { -sum };
            assert_eq!(*ck, z.reduce_i64(expected), "s^{k}");
        }
        let minors = leading_minors(&z, &lift(&a));
        for r in 1..=4 {
            let sub: Vec<Vec<i64>> = a[..r].iter().map(|row| row[..r].to_vec()).collect();
            assert_eq!(minors[r - 1], z.reduce_i64(det_oracle(&sub)));
        }
    }

    #[test]
    fn power_traces() {
        let z = zm();
        let a = lift(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(trace_of_power(&z, &a, 1), 5);
        assert_eq!(trace_of_power(&z, &a, 2), 29);
        assert_eq!(trace_of_power(&z, &a, 3), z.reduce_i64(155));
    }
}
