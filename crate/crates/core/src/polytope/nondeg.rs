use std::collections::HashSet;
use std::sync::Arc;

use super::degree::DegreeData;
use super::faces::{faces_no_origin, restrict_to_face};
use super::laurent::LaurentPoly;
use crate::arith::field::{FieldCtx, Fq, MAX_FIELD_SIZE};
use crate::error::Result;

/// Torus points we are willing to visit per face and extension degree.
const SEARCH_LIMIT: u64 = 1 << 21;

/// Outcome of the non-degeneracy test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nondegeneracy {
    /// Proven: on every face avoiding the origin the exponents are linearly
    /// independent mod `p`, so `Σ c_u u x^u = 0` has no toric solution.
    Nondegenerate,
    /// A common zero of all `x_i ∂f_σ/∂x_i` on the torus of `F_(q^r)`,
    /// given as discrete logs to the base of that field's generator.
    Degenerate {
        face: Vec<Vec<i64>>,
        extension: u32,
        point_logs: Vec<u64>,
    },
    /// No zero found over `F_(q^r)` for `r ≤ searched_upto`.
    Unknown { searched_upto: u32 },
}

/// Search for common toric zeros of the face-restricted gradients
/// `x_i ∂f_σ/∂x_i`, for every closed face `σ` avoiding the origin, over the
/// extensions `F_(q^r)`, `r = 1..=r_max`.
pub fn is_nondegenerate(f: &LaurentPoly, r_max: u32) -> Result<Nondegeneracy> {
    let dd = DegreeData::new(f)?;
    let ctx = f.ctx().clone();
    let p = ctx.p() as i64;
    let faces = faces_no_origin(&dd);
    let mut restricted = Vec::with_capacity(faces.len());
    for face in &faces {
        restricted.push(restrict_to_face(f, &dd, face)?);
    }

    // faces with exponents independent mod p are settled; a single
    // exponent divisible by p is a zero everywhere
    for g in restricted.iter().filter(|g| g.len() == 1) {
        let u = g.exponents().next().unwrap();
        if u.iter().all(|&e| e % p == 0) {
            return Ok(Nondegeneracy::Degenerate {
                face: vec![u.clone()],
                extension: 1,
                point_logs: vec![0; f.nvars()],
            });
        }
    }
    restricted.retain(|g| {
        let rows: Vec<Vec<i64>> = g.exponents().cloned().collect();
        rank_mod_p(&rows, p) < rows.len()
    });
    if restricted.is_empty() {
        return Ok(Nondegeneracy::Nondegenerate);
    }

    let n = f.nvars() as u32;
    let mut searched = 0;
    for r in 1..=r_max {
        let a = ctx.degree() * r;
        let Some(size) = ctx.p().checked_pow(a).filter(|&s| s <= MAX_FIELD_SIZE) else {
            break;
        };
        if (size - 1).checked_pow(n).is_none_or(|t| t > SEARCH_LIMIT) {
            break;
        }
        let big = Arc::new(FieldCtx::new(ctx.p(), a)?);
        let root = big.find_root_of(&ctx).expect("F_q embeds in F_(q^r)");
        for g in &restricted {
            if let Some(point_logs) = toric_zero(g, &big, root) {
                return Ok(Nondegeneracy::Degenerate {
                    face: g.exponents().cloned().collect(),
                    extension: r,
                    point_logs,
                });
            }
        }
        searched = r;
    }
    Ok(Nondegeneracy::Unknown {
        searched_upto: searched,
    })
}

fn rank_mod_p(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = (1..p).find(|x| x * m[rank][c] % p == 1).expect("p is prime");
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let k = m[i][c] * inv % p;
                for j in 0..cols {
                    m[i][j] = (m[i][j] - k * m[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn toric_zero(g: &LaurentPoly, big: &FieldCtx, root: Fq) -> Option<Vec<u64>> {
    let n = g.nvars();
    let p = big.p() as i64;
    let order = big.order();
    let terms: Vec<(u64, Vec<i64>, Vec<i64>)> = g
        .terms()
        .iter()
        .map(|(u, &c)| {
            let c_big = big.embed_from(g.ctx(), root, c);
            let log = big.log(c_big).expect("nonzero coefficient");
            let weights = u.iter().map(|&e| e.rem_euclid(p)).collect();
            (log, u.clone(), weights)
        })
        .collect();
    let mut logs = vec![0u64; n];
    loop {
        let mut grads = vec![Fq(0); n];
        for (clog, u, w) in &terms {
            let e = u
                .iter()
                .zip(&logs)
                .fold(*clog as i128, |acc, (&ui, &li)| acc + ui as i128 * li as i128)
                .rem_euclid(order as i128) as u64;
            let mono = big.exp(e);
            for i in 0..n {
                if w[i] != 0 {
                    grads[i] = big.add(grads[i], big.mul(mono, big.from_int(w[i])));
                }
            }
        }
        if grads.iter().all(|&x| x == Fq(0)) {
            return Some(logs);
        }
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            logs[i] += 1;
            if logs[i] < order {
                break;
            }
            logs[i] = 0;
            i += 1;
        }
    }
}

/// The exponent `I(Δ)`: the least `d ≤ bound` with `d·M(Δ) ⊆ S(Δ)`, where
/// `S(Δ)` is the monoid generated by the degree-1 lattice points.
///
/// Every lattice point of the cone is a sum of degree-1 points and a point
/// of degree `< n` (triangulate the cone by simplicial cones over degree-1
/// vertices; the remainder sits in a half-open fundamental parallelepiped).
/// So `M(Δ)` is generated by its points of degree `≤ n`, and it suffices
/// to test those. Membership in `S(Δ)` of a point of integral degree `t`
/// is tested against the explicit set of `t`-fold sums.
pub fn exponent_i(dd: &DegreeData, bound: i64) -> Option<i64> {
    let den = dd.den;
    let n = dd.n as i64;
    let generators: Vec<(Vec<i64>, i64)> = dd
        .lattice_points_upto(n * den)
        .into_iter()
        .filter(|(_, k)| *k > 0)
        .collect();
    let unit: Vec<Vec<i64>> = generators
        .iter()
        .filter(|(_, k)| *k == den)
        .map(|(u, _)| u.clone())
        .collect();
    let mut layers: Vec<HashSet<Vec<i64>>> = vec![[vec![0; dd.n]].into_iter().collect()];
    let layer = |layers: &mut Vec<HashSet<Vec<i64>>>, t: usize| {
        while layers.len() <= t {
            let last = layers.last().unwrap();
            let mut next = HashSet::new();
            for s in last {
                for g in &unit {
                    next.insert(s.iter().zip(g).map(|(a, b)| a + b).collect::<Vec<i64>>());
                }
            }
            layers.push(next);
        }
    };
    'outer: for d in 1..=bound {
        for (u, k) in &generators {
            if (d * k) % den != 0 {
                continue 'outer;
            }
            let t = (d * k / den) as usize;
            layer(&mut layers, t);
            let du: Vec<i64> = u.iter().map(|x| x * d).collect();
            if !layers[t].contains(&du) {
                continue 'outer;
            }
        }
        return Some(d);
    }
    None
}
