use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;

use super::artin_hasse::artin_hasse;
use crate::arith::ring::{PadicRing, Ring};
use crate::arith::unramified::{ZqElem, ZqRing};
use crate::error::{Error, Result};
use crate::polytope::degree::DegreeData;
use crate::polytope::laurent::LaurentPoly;
use crate::series::polygon::Q;

/// `E_f(x) = Π E(π·â_u·x^u) = Σ e_w(π) x^w`, with each `e_w` a `π`-series
/// over `Z_q` known modulo `π^pi_len`, and `â_u` the Teichmüller lifts.
#[derive(Clone, Debug)]
pub struct EfExpansion {
    pub zq: ZqRing,
    pub dd: DegreeData,
    pub pi_len: usize,
    pub coeffs: BTreeMap<Vec<i64>, Vec<ZqElem>>,
}

/// Expand `E_f` so that `α_u(f) = e_u / π^deg(u)` is known modulo
/// `π^n_pi` for every `u` with `deg(u) ≤ deg_cap`.
pub fn e_f_expansion(f: &LaurentPoly, deg_cap: Q, prec: u32, n_pi: usize) -> Result<EfExpansion> {
    let zq = ZqRing::new(f.ctx().clone(), prec)?;
    let pi_len = n_pi + Integer::div_ceil(deg_cap.numer(), deg_cap.denom()).max(0) as usize;
    expand(f, &zq, pi_len)
}

/// Expand `E_f` modulo `π^pi_len` over the given unramified ring, which
/// must have `f`'s field as residue field.
pub fn expand(f: &LaurentPoly, zq: &ZqRing, pi_len: usize) -> Result<EfExpansion> {
    let (a, b) = (zq.field(), f.ctx());
    if !Arc::ptr_eq(a, b) && (a.p(), a.degree(), a.defining_poly()) != (b.p(), b.degree(), b.defining_poly()) {
        return Err(Error::InvalidInput("coefficient ring does not match the polynomial's field".into()));
    }
    let dd = DegreeData::new(f)?;
    let ah = artin_hasse(zq.prime(), pi_len.max(1))?.residues(&zq.scalars());
    let zero_vec = vec![0i64; f.nvars()];
    let mut acc: BTreeMap<Vec<i64>, Vec<ZqElem>> = BTreeMap::new();
    let mut one = vec![zq.zero(); pi_len];
    if pi_len > 0 {
        one[0] = zq.one();
    }
    acc.insert(zero_vec, one);
    for (u, &a) in f.terms() {
        let t = zq.teichmuller(a);
        // e_k t^k, the coefficient of π^k x^(ku) in E(π t x^u)
        let mut tk = zq.one();
        let mut factor = Vec::with_capacity(pi_len);
        for e in ah.iter().take(pi_len) {
            factor.push(zq.scale(&tk, *e));
            tk = zq.mul(&tk, &t);
        }
        let mut next: BTreeMap<Vec<i64>, Vec<ZqElem>> = BTreeMap::new();
        for (v, s) in &acc {
            let Some(o) = s.iter().position(|c| !zq.is_zero(c)) else {
                continue;
            };
            for (k, c) in factor.iter().enumerate().take(pi_len - o) {
                if zq.is_zero(c) {
                    continue;
                }
                let w: Vec<i64> = v.iter().zip(u).map(|(x, y)| x + k as i64 * y).collect();
                let target = next.entry(w).or_insert_with(|| vec![zq.zero(); pi_len]);
                for i in o..pi_len - k {
                    zq.mul_add_assign(&mut target[i + k], &s[i], c);
                }
            }
        }
        acc = next;
    }
    acc.retain(|_, s| s.iter().any(|c| !zq.is_zero(c)));
    Ok(EfExpansion {
        zq: zq.clone(),
        dd,
        pi_len,
        coeffs: acc,
    })
}

impl EfExpansion {
    /// `e_w` as a `π`-series, `None` when it vanishes at this precision.
    pub fn e(&self, w: &[i64]) -> Option<&Vec<ZqElem>> {
        self.coeffs.get(w)
    }

    /// `α_w = e_w / π^deg(w)` as a series in `π^(1/D)` with `rho_len` terms.
    pub fn alpha(&self, w: &[i64], rho_len: usize) -> Result<Vec<ZqElem>> {
        let den = self.dd.den as usize;
        let dw = self.dd.degree_num(w)? as usize;
        if den * self.pi_len < rho_len + dw {
            return Err(Error::TruncationInsufficient(format!(
                "α at {w:?} needs π-precision {}/{den}, expansion has {}",
                rho_len + dw,
                self.pi_len
            )));
        }
        let mut out = vec![self.zq.zero(); rho_len];
        if let Some(s) = self.e(w) {
            for (i, c) in s.iter().enumerate() {
                if self.zq.is_zero(c) {
                    continue;
                }
                let j = (den * i)
                    .checked_sub(dw)
                    .ok_or_else(|| Error::DivisionNotExact(format!("e at {w:?} has a π^{i} term")))?;
                if j < rho_len {
                    out[j] = c.clone();
                }
            }
        }
        Ok(out)
    }
}

