use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::functions::{c_function, congruence_modulus, l_function, specialize_series};
use crate::arith::cyclotomic::CycRing;
use crate::arith::field::Fq;
use crate::error::{Error, Result};
use crate::polytope::degree::DegreeData;
use crate::polytope::faces::normalized_volume;
use crate::polytope::laurent::LaurentPoly;
use crate::polytope::nondeg::{is_nondegenerate, Nondegeneracy};
use crate::series::polygon::{agreement_upto, common_range, dominates, NewtonPolygon, Tail, Valuation, Q};
use crate::series::sseries::SSeries;
use crate::series::trunc::TRing;

/// Working precisions: p-adic digits, `T`-adic length, and `s`-degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub prec_p: u32,
    pub prec_t: usize,
    pub deg_s: usize,
}

/// `T`-adic valuations of the `s`-coefficients.
pub fn t_valuations(c: &SSeries<TRing>) -> Vec<Valuation> {
    let cap = Q::from(c.ring.len() as i64);
    c.coeffs
        .iter()
        .map(|x| match c.ring.ord(x) {
            Some(o) => Valuation::Exact(Q::from(o as i64)),
            None => Valuation::AtLeast(cap),
        })
        .collect()
}

/// `π_ψ`-adic valuations of the `s`-coefficients.
pub fn cyc_valuations(c: &SSeries<CycRing>) -> Vec<Valuation> {
    let cap = Q::from(c.ring.ord_cap() as i64);
    c.coeffs
        .iter()
        .map(|x| match c.ring.ord(x) {
            Some(o) => Valuation::Exact(Q::from(o as i64)),
            None => Valuation::AtLeast(cap),
        })
        .collect()
}

/// The q-Hodge polygon deep enough to extend past `width`.
pub fn hodge_covering(dd: &DegreeData, p: u64, a: u32, width: usize) -> NewtonPolygon {
    let mut k = dd.den.max(1);
    loop {
        let hp = dd.hodge_polygon(p, a, k);
        if hp.end() > width as i64 {
            return hp;
        }
        k *= 2;
    }
}

/// `Some(true)` if the polygons agree on their whole common certified
/// range, `Some(false)` if they differ there, `None` if that range is
/// empty.
pub fn agreement_flag(p: &NewtonPolygon, q: &NewtonPolygon) -> Option<bool> {
    let x = common_range(p, q);
    if x < 1 {
        return None;
    }
    Some(agreement_upto(p, q) == x)
}

#[derive(Clone, Debug)]
pub struct PsiReport {
    pub m: u32,
    pub np: NewtonPolygon,
    /// `NP_πψ = NP_T` on the common certified range.
    pub rigid: Option<bool>,
    pub rigid_upto: i64,
    /// `NP_πψ = HP_q` on the common certified range.
    pub ordinary: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct NpReport {
    pub np_t: NewtonPolygon,
    pub hp: NewtonPolygon,
    pub hp_absolute: NewtonPolygon,
    pub t_ordinary: Option<bool>,
    /// Vertices of `HP_q` (past the origin) where `NP_T` is certified equal.
    pub t_ordinary_vertices: usize,
    pub psi: Vec<PsiReport>,
}

/// `NP_T`, `NP_πψ` for each requested `m`, `HP_q`, and the ordinariness
/// and rigidity flags, with the chain `NP_πψ ≥ NP_T ≥ HP_q` enforced.
pub fn np_report(f: &LaurentPoly, m_list: &[u32], caps: Caps) -> Result<NpReport> {
    let dd = DegreeData::new(f)?;
    let ctx = f.ctx();
    let c = c_function(f, caps.deg_s, caps.prec_p, caps.prec_t)?;
    np_report_from(&dd, ctx.p(), ctx.degree(), &c, m_list)
}

/// [`np_report`] from an already computed `C_f(s,T)`.
pub fn np_report_from(
    dd: &DegreeData,
    p: u64,
    a: u32,
    c: &SSeries<TRing>,
    m_list: &[u32],
) -> Result<NpReport> {
    let hp = hodge_covering(dd, p, a, c.deg());
    let hp_absolute = hp.rescale(Q::new(1, a as i64 * (p as i64 - 1)));
    let np_t = NewtonPolygon::from_valuations(&t_valuations(c), Tail::Bounded(&hp));
    if common_range(&np_t, &hp) >= 1 && !dominates(&np_t, &hp)? {
        return Err(Error::TheoremViolation(format!("NP_T {np_t} lies below HP_q {hp}")));
    }
    let t_ordinary = agreement_flag(&np_t, &hp);
    let agree = agreement_upto(&np_t, &hp);
    let t_ordinary_vertices = hp.vertices.iter().filter(|v| v.0 > 0 && v.0 <= agree).count();

    let mut psi = Vec::new();
    for &m in m_list {
        let cs = specialize_series(c, m)?;
        let np = NewtonPolygon::from_valuations(&cyc_valuations(&cs), Tail::Bounded(&hp));
        if common_range(&np, &np_t) >= 1 && !dominates(&np, &np_t)? {
            return Err(Error::TheoremViolation(format!(
                "NP_πψ (m = {m}) {np} lies below NP_T {np_t}"
            )));
        }
        psi.push(PsiReport {
            m,
            rigid: agreement_flag(&np, &np_t),
            rigid_upto: agreement_upto(&np, &np_t),
            ordinary: agreement_flag(&np, &hp),
            np,
        });
    }
    Ok(NpReport {
        np_t,
        hp,
        hp_absolute,
        t_ordinary,
        t_ordinary_vertices,
        psi,
    })
}

/// How the non-degeneracy hypothesis of the congruence theorem was met.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Attestation {
    Certified,
    Override,
}

#[derive(Clone, Debug)]
pub struct CongruenceEntry {
    pub k: usize,
    /// `false` when `k` is within the degree bound and the theorem is silent.
    pub checked: bool,
    /// The remainder is meaningful modulo `p^certified_digits`.
    pub certified_digits: u32,
    pub remainder: Vec<u64>,
    pub pass: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct CongruenceReport {
    pub m: u32,
    pub bound: u64,
    pub attestation: Attestation,
    pub entries: Vec<CongruenceEntry>,
}

/// `n!·Vol(Δ)·p^(n(m-1))`.
pub fn degree_bound(dd: &DegreeData, p: u64, m: u32) -> u64 {
    normalized_volume(dd) * p.pow(dd.n as u32 * (m - 1))
}

/// Remainder of `x(T)` modulo the monic `modulus`, in place of the input's
/// `Z/p^M`.
fn remainder_mod(ring: &TRing, x: &[u64], modulus: &[u64]) -> Vec<u64> {
    let zm = *ring.base();
    let d = modulus.len() - 1;
    let mut r = x.to_vec();
    for j in (d..r.len()).rev() {
        let c = r[j];
        if c == 0 {
            continue;
        }
        for i in 0..=d {
            r[j - d + i] = zm.sub(r[j - d + i], zm.mul(c, modulus[i]));
        }
    }
    r.truncate(d);
    r
}

/// Check `L_(f,k)(T) ≡ 0 mod ((1+T)^(p^m) - 1)/T` for each `k` past the
/// degree bound, where `L_f^((-1)^(n-1)) = Σ L_(f,k)(T) s^k`.
///
/// The tail `T^j`, `j ≥ N`, of the truncated series is `≡ 0` modulo
/// `p^floor(N/(p^m - 1))` in the quotient (the modulus is `T^(p^m-1)` mod
/// `p`), so the remainder is certified modulo `p` to the minimum of that and
/// the series' own precision.
pub fn congruence_check(
    f: &LaurentPoly,
    m: u32,
    ks: &[usize],
    caps: Caps,
    override_nondegenerate: bool,
    r_max: u32,
) -> Result<CongruenceReport> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    let attestation = match is_nondegenerate(f, r_max)? {
        Nondegeneracy::Nondegenerate => Attestation::Certified,
        Nondegeneracy::Degenerate { .. } => {
            return Err(Error::InvalidInput("polynomial is degenerate".into()));
        }
        Nondegeneracy::Unknown { .. } if override_nondegenerate => Attestation::Override,
        Nondegeneracy::Unknown { searched_upto } => {
            return Err(Error::InvalidInput(format!(
                "non-degeneracy not certified (no witness up to r = {searched_upto}); \
                 pass the override to run anyway"
            )));
        }
    };
    let dd = DegreeData::new(f)?;
    let p = f.ctx().p();
    let bound = degree_bound(&dd, p, m);
    let deg = ks.iter().copied().max().unwrap_or(0).max(1);
    let l = l_function(f, deg, caps.prec_p, caps.prec_t)?;
    let lpow = if f.nvars() % 2 == 1 { l } else { l.inv()? };
    let zm = *lpow.ring.base();
    let modulus = congruence_modulus(&zm, m);
    let dphi = modulus.len() - 1;
    let certified_digits = zm.prec().min((caps.prec_t / dphi) as u32);
    let entries = ks
        .iter()
        .map(|&k| {
            if (k as u64) <= bound {
                return CongruenceEntry {
                    k,
                    checked: false,
                    certified_digits,
                    remainder: Vec::new(),
                    pass: None,
                };
            }
            let r = remainder_mod(&lpow.ring, &lpow.coeffs[k], &modulus);
            let pk = p.pow(certified_digits);
            let pass = (certified_digits > 0).then(|| r.iter().all(|&c| c % pk == 0));
            CongruenceEntry {
                k,
                checked: true,
                certified_digits,
                remainder: r,
                pass,
            }
        })
        .collect();
    Ok(CongruenceReport {
        m,
        bound,
        attestation,
        entries,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurveyReport {
    pub samples: u64,
    /// Certified `NP_T` prefix (as text) to number of samples.
    pub histogram: BTreeMap<String, u64>,
    pub t_ordinary: u64,
    pub uncertified: u64,
}

/// Sample `samples` polynomials with the support of `template` and
/// uniformly random coefficients in `F_q^×`, and tabulate their certified
/// `NP_T` prefixes.
pub fn survey_family(template: &LaurentPoly, samples: u64, seed: u64, caps: Caps) -> Result<SurveyReport> {
    let ctx = template.ctx().clone();
    let dd = DegreeData::new(template)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SurveyReport::default();
    for _ in 0..samples {
        let coeffs: Vec<Fq> = (0..template.len())
            .map(|_| ctx.exp(rng.gen_range(0..ctx.order())))
            .collect();
        let f = template.with_coefficients(&coeffs)?;
        let c = c_function(&f, caps.deg_s, caps.prec_p, caps.prec_t)?;
        let r = np_report_from(&dd, ctx.p(), ctx.degree(), &c, &[])?;
        report.samples += 1;
        *report
            .histogram
            .entry(r.np_t.certified_prefix().to_string())
            .or_insert(0) += 1;
        match r.t_ordinary {
            Some(true) => report.t_ordinary += 1,
            Some(false) => {}
            None => report.uncertified += 1,
        }
    }
    Ok(report)
}
