use num_integer::Integer;

use super::artin_hasse::{artin_hasse, e_minus_one};
use super::expansion::expand;
use super::matrix::{char_series, leading_minors, psi_a_matrix, trace_of_power, DworkMatrix};
use crate::arith::ring::{PadicRing, Ring};
use crate::arith::unramified::{ZqElem, ZqRing};
use crate::error::{Error, Result};
use crate::polytope::degree::DegreeData;
use crate::polytope::faces::{codim1_faces_no_origin, restrict_to_face};
use crate::polytope::laurent::LaurentPoly;
use crate::polytope::linalg::rank;
use crate::series::polygon::Q;
use crate::series::trunc::TRing;
use crate::sums::{c_function, s_f_t};

/// Precisions for the operator route.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DworkCaps {
    pub prec: u32,
    pub n_pi: usize,
    pub basis: Q,
}

impl DworkCaps {
    /// The smallest admissible basis, `B = N_π/(p-1)`.
    pub fn minimal(p: u64, prec: u32, n_pi: usize) -> Self {
        DworkCaps {
            prec,
            n_pi,
            basis: Q::new(n_pi as i64, p as i64 - 1),
        }
    }
}

/// Rewrite a `T`-series as a `ρ`-series through `T = E(π) - 1`. Returns
/// the number of `ρ` terms that are meaningful.
fn t_to_rho(t_ring: &TRing, x: &[u64], mx: &DworkMatrix) -> Result<(Vec<ZqElem>, usize)> {
    let zq = mx.ring.base();
    let n = t_ring.len();
    let em1 = e_minus_one(t_ring, &artin_hasse(zq.prime(), n)?);
    let y = t_ring.compose(x, &em1);
    let den = mx.den as usize;
    let mut out = mx.ring.zero();
    for (i, c) in y.iter().enumerate() {
        if den * i < out.len() {
            out[den * i] = zq.scalar(*c);
        }
    }
    Ok((out, (den * n).min(mx.ring.len())))
}

/// `a ≡ b` modulo `(p^digits, ρ^upto)`.
fn congruent(zq: &ZqRing, a: &[ZqElem], b: &[ZqElem], digits: u32, upto: usize) -> bool {
    let pk = zq.prime().pow(digits);
    a.iter().zip(b).take(upto).all(|(x, y)| zq.sub(x, y).iter().all(|c| c % pk == 0))
}

/// Outcome of a comparison between the two routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPathReport {
    pub pass: bool,
    /// Per compared item (power of `s`, or the single trace).
    pub agree: Vec<bool>,
    /// The comparison holds modulo `π^modulus_pi`...
    pub modulus_pi: Q,
    /// ...and `p^digits`.
    pub digits: u32,
}

/// `Tr(ψ^(ak)) = (q^k - 1)^(-n) S_f(k, T)` on a prebuilt matrix.
pub fn trace_check(f: &LaurentPoly, mx: &DworkMatrix, k: u32) -> Result<TwoPathReport> {
    let zq = mx.ring.base();
    let (t_ring, s) = s_f_t(f, k, zq.precision(), mx.n_pi)?;
    let zm = *t_ring.base();
    let q = f.ctx().size();
    let qk1 = zm.sub(zm.pow(zm.reduce_u64(q), k as u64), 1);
    let factor = zm.pow(zm.inv(qk1).ok_or(Error::NonUnit)?, f.nvars() as u64);
    let s: Vec<u64> = s.iter().map(|c| zm.mul(*c, factor)).collect();
    let (rhs, known) = t_to_rho(&t_ring, &s, mx)?;
    let lhs = trace_of_power(&mx.ring, &mx.entries, k);
    let upto = known.min(mx.certified_rho());
    let digits = zm.prec().min(zq.precision());
    let ok = congruent(zq, &lhs, &rhs, digits, upto);
    Ok(TwoPathReport {
        pass: ok,
        agree: vec![ok],
        modulus_pi: Q::new(upto as i64, mx.den),
        digits,
    })
}

/// Dwork's trace formula at `k`, checked on the truncated `ψ^a`.
pub fn verify_trace_formula(f: &LaurentPoly, k: u32, caps: DworkCaps) -> Result<TwoPathReport> {
    let mx = psi_a_matrix(f, caps.basis, caps.prec, caps.n_pi)?;
    trace_check(f, &mx, k)
}

/// `det(1 - ψ^a s)` against `C_f(s, T)` from the torus sums, on a prebuilt
/// matrix.
pub fn char_series_check(f: &LaurentPoly, mx: &DworkMatrix, deg_s: usize) -> Result<TwoPathReport> {
    let zq = mx.ring.base();
    let c = c_function(f, deg_s, zq.precision(), mx.n_pi)?;
    let det = char_series(mx, deg_s);
    let digits = c.ring.base().prec().min(zq.precision());
    let mut agree = Vec::with_capacity(deg_s + 1);
    let mut upto = mx.certified_rho();
    for (x, y) in c.coeffs.iter().zip(&det.coeffs) {
        let (rhs, known) = t_to_rho(&c.ring, x, mx)?;
        upto = upto.min(known);
        agree.push(congruent(zq, y, &rhs, digits, upto));
    }
    Ok(TwoPathReport {
        pass: agree.iter().all(|&b| b),
        agree,
        modulus_pi: Q::new(upto as i64, mx.den),
        digits,
    })
}

/// The two-route check of `C_f(s, T)` up to `s^deg_s`.
pub fn compare_char_series(f: &LaurentPoly, deg_s: usize, caps: DworkCaps) -> Result<TwoPathReport> {
    let mx = psi_a_matrix(f, caps.basis, caps.prec, caps.n_pi)?;
    char_series_check(f, &mx, deg_s)
}

/// Determinant of one leading degree block of the normalized matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorReport {
    /// The block holds the basis points of degree at most this.
    pub degree: Q,
    pub size: usize,
    /// p-adic valuation of the determinant modulo `π^(1/D)`; `None` when it
    /// vanishes modulo `p^M`.
    pub valuation: Option<u32>,
}

impl MinorReport {
    /// The determinant is certified not divisible by `T`.
    pub fn nonvanishing(&self) -> bool {
        self.valuation.is_some()
    }
}

/// `(α_(pw-u)(f) π^c(pw-u,u))` modulo `π^(1/D)` on basis points of degree
/// at most `max_num/D`.
pub struct ResidueMatrix {
    pub zq: ZqRing,
    pub dd: DegreeData,
    pub basis: Vec<(Vec<i64>, i64)>,
    pub entries: Vec<Vec<ZqElem>>,
}

pub fn residue_matrix(f: &LaurentPoly, max_degree: Q, prec: u32) -> Result<ResidueMatrix> {
    let dd = DegreeData::new(f)?;
    let den = dd.den;
    let p = f.ctx().p() as i64;
    let max_num = Integer::div_floor(&(max_degree.numer() * den), max_degree.denom());
    let basis = dd.lattice_points_upto(max_num);
    let zq = ZqRing::new(f.ctx().clone(), prec)?;
    // co-facial terms have deg(pw - u) = p·deg(w) - deg(u) ≤ p·max_degree
    let pi_len = (p * max_num.max(0) / den) as usize + 1;
    let ex = expand(f, &zq, pi_len)?;
    let mut entries = Vec::with_capacity(basis.len());
    for (w, dw) in &basis {
        let mut row = Vec::with_capacity(basis.len());
        for (u, du) in &basis {
            let v: Vec<i64> = w.iter().zip(u).map(|(x, y)| p * x - y).collect();
            let mut entry = zq.zero();
            if dd.in_cone(&v) {
                let dv = dd.degree_num(&v)?;
                // the co-facial defect must vanish, and α_v has a unit
                // π-power term only when deg(v) is an integer
                if dv + du == p * dw && dv % den == 0 {
                    if let Some(s) = ex.e(&v) {
                        entry = s[(dv / den) as usize].clone();
                    }
                }
            }
            row.push(entry);
        }
        entries.push(row);
    }
    Ok(ResidueMatrix { zq, dd, basis, entries })
}

impl ResidueMatrix {
    /// Leading minors at the end of each degree block.
    pub fn block_minors(&self) -> Vec<MinorReport> {
        let minors = leading_minors(&self.zq, &self.entries);
        let mut out = Vec::new();
        for (i, (_, d)) in self.basis.iter().enumerate() {
            let last = i + 1 == self.basis.len() || self.basis[i + 1].1 != *d;
            if last {
                out.push(MinorReport {
                    degree: Q::new(*d, self.dd.den),
                    size: i + 1,
                    valuation: self.zq.valuation(&minors[i]),
                });
            }
        }
        out
    }

    /// The open facial cone of each basis point, as (tight facets,
    /// dimension of the cone). The origin gets dimension 0.
    fn facial_classes(&self) -> Vec<(Vec<usize>, usize)> {
        let dd = &self.dd;
        self.basis
            .iter()
            .map(|(u, du)| {
                if *du == 0 {
                    return (Vec::new(), 0);
                }
                let tight: Vec<usize> = dd
                    .facets
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.height > 0)
                    .filter(|(_, f)| crate::polytope::linalg::dot(&f.normal, u) * (dd.den / f.height) == *du)
                    .map(|(i, _)| i)
                    .collect();
                let normals: Vec<Vec<i64>> = tight.iter().map(|&i| dd.facets[i].normal.clone()).collect();
                let dim = dd.n - rank(&normals) + 1;
                (tight, dim)
            })
            .collect()
    }

    /// Entries linking distinct open facial cones vanish whenever the row's
    /// cone has dimension at most that of the column's, so ordering the
    /// basis by cone dimension makes the matrix block triangular.
    pub fn is_facially_block_triangular(&self) -> bool {
        let classes = self.facial_classes();
        let n = self.basis.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                classes[i].0 == classes[j].0
                    || classes[i].1 > classes[j].1
                    || self.zq.is_zero(&self.entries[i][j])
            })
        })
    }
}

/// The determinant criterion for `T`-adic ordinariness, block by block up
/// to `max_degree`.
pub fn ordinariness_determinants(f: &LaurentPoly, max_degree: Q, prec: u32) -> Result<Vec<MinorReport>> {
    Ok(residue_matrix(f, max_degree, prec)?.block_minors())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceVerdict {
    /// Exponents of the restricted polynomial.
    pub exponents: Vec<Vec<i64>>,
    pub minors: Vec<MinorReport>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutoffVerdict {
    pub degree: Q,
    pub whole: bool,
    pub faces: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacialReport {
    pub whole: Vec<MinorReport>,
    pub faces: Vec<FaceVerdict>,
    pub cutoffs: Vec<CutoffVerdict>,
    pub block_triangular: bool,
    /// The whole-polytope verdict equals the conjunction over faces at
    /// every cutoff.
    pub agree: bool,
}

/// Largest-degree minor of a face at or below `degree`; an empty block is
/// trivially nonvanishing.
fn face_verdict_at(minors: &[MinorReport], degree: Q) -> bool {
    minors
        .iter()
        .rev()
        .find(|m| m.degree <= degree)
        .is_none_or(|m| m.nonvanishing())
}

/// Run the determinant criterion on `f` and on each restriction to a
/// codimension-1 face avoiding the origin, and compare.
pub fn facial_criterion(f: &LaurentPoly, max_degree: Q, prec: u32) -> Result<FacialReport> {
    let whole_matrix = residue_matrix(f, max_degree, prec)?;
    let whole = whole_matrix.block_minors();
    let block_triangular = whole_matrix.is_facially_block_triangular();
    let dd = &whole_matrix.dd;
    let mut faces = Vec::new();
    for face in codim1_faces_no_origin(dd) {
        let g = restrict_to_face(f, dd, &face)?;
        let minors = ordinariness_determinants(&g, max_degree, prec)?;
        faces.push(FaceVerdict {
            exponents: g.exponents().cloned().collect(),
            minors,
        });
    }
    let mut cutoffs = Vec::new();
    for m in &whole {
        let w = m.nonvanishing();
        let fs = faces.iter().all(|fv| face_verdict_at(&fv.minors, m.degree));
        if w && !fs {
            return Err(Error::TheoremViolation(format!(
                "whole polytope is ordinary up to degree {} but a face is not",
                m.degree
            )));
        }
        cutoffs.push(CutoffVerdict {
            degree: m.degree,
            whole: w,
            faces: fs,
        });
    }
    Ok(FacialReport {
        agree: cutoffs.iter().all(|c| c.whole == c.faces),
        whole,
        faces,
        cutoffs,
        block_triangular,
    })
}
