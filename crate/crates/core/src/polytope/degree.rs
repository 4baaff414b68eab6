use num_integer::Integer;

use super::laurent::{LaurentPoly, MAX_VARS};
use super::linalg::{dot, normal_vector, rank};
use crate::error::{Error, Result};
use crate::series::polygon::{NewtonPolygon, Q};

/// A facet of `Δ`: `⟨normal, x⟩ ≤ height` on `Δ`, with equality on the
/// facet. `normal` is primitive; `height ≥ 0` because `0 ∈ Δ`, and
/// `height = 0` exactly for facets through the origin.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub height: i64,
}

impl Facet {
    pub fn contains(&self, u: &[i64]) -> bool {
        dot(&self.normal, u) == self.height
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OriginPosition {
    Interior,
    Boundary,
    Vertex,
}

/// The Newton polytope `Δ = conv({0} ∪ exponents)` with its degree
/// function `deg(u) = min{c ≥ 0 : u ∈ cΔ}`.
#[derive(Clone, Debug)]
pub struct DegreeData {
    pub n: usize,
    /// The origin followed by the distinct nonzero exponents, sorted.
    pub points: Vec<Vec<i64>>,
    pub vertices: Vec<Vec<i64>>,
    pub facets: Vec<Facet>,
    /// Denominator of the degree function on lattice points.
    pub den: i64,
    pub origin: OriginPosition,
}

impl DegreeData {
    pub fn new(f: &LaurentPoly) -> Result<Self> {
        let exps: Vec<Vec<i64>> = f.exponents().cloned().collect();
        Self::from_exponents(f.nvars(), &exps)
    }

    pub fn from_exponents(n: usize, exps: &[Vec<i64>]) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::DimensionTooLarge(n));
        }
        let mut points = vec![vec![0i64; n]];
        let mut rest: Vec<Vec<i64>> = exps.iter().filter(|u| u.iter().any(|&x| x != 0)).cloned().collect();
        rest.sort();
        rest.dedup();
        if rest.is_empty() {
            return Err(Error::Degenerate("all exponents are zero".into()));
        }
        points.extend(rest);
        if rank(&points[1..]) < n {
            return Err(Error::Degenerate(
                "Newton polytope is not full-dimensional".into(),
            ));
        }
        let facets = find_facets(n, &points);
        let vertices: Vec<Vec<i64>> = points
            .iter()
            .filter(|p| {
                let normals: Vec<Vec<i64>> = facets
                    .iter()
                    .filter(|f| f.contains(p))
                    .map(|f| f.normal.clone())
                    .collect();
                rank(&normals) == n
            })
            .cloned()
            .collect();
        let den = facets
            .iter()
            .filter(|f| f.height > 0)
            .fold(1i64, |acc, f| acc.lcm(&f.height));
        let through_origin = facets.iter().any(|f| f.height == 0);
        let origin = if vertices.iter().any(|v| v.iter().all(|&x| x == 0)) {
            OriginPosition::Vertex
        } else if through_origin {
            OriginPosition::Boundary
        } else {
            OriginPosition::Interior
        };
        Ok(DegreeData {
            n,
            points,
            vertices,
            facets,
            den,
            origin,
        })
    }

    /// Facets not containing the origin; the degree is 1 on these.
    pub fn facets_no_origin(&self) -> impl Iterator<Item = &Facet> {
        self.facets.iter().filter(|f| f.height > 0)
    }

    pub fn in_cone(&self, u: &[i64]) -> bool {
        self.facets
            .iter()
            .filter(|f| f.height == 0)
            .all(|f| dot(&f.normal, u) <= 0)
    }

    /// `D·deg(u)`, an integer for lattice points.
    pub fn degree_num(&self, u: &[i64]) -> Result<i64> {
        if !self.in_cone(u) {
            return Err(Error::NotInCone(u.to_vec()));
        }
        Ok(self.degree_num_unchecked(u))
    }

    fn degree_num_unchecked(&self, u: &[i64]) -> i64 {
        self.facets_no_origin()
            .map(|f| dot(&f.normal, u) * (self.den / f.height))
            .max()
            .unwrap_or(0)
            .max(0)
    }

    pub fn degree(&self, u: &[i64]) -> Result<Q> {
        Ok(Q::new(self.degree_num(u)?, self.den))
    }

    /// `c(u, v) = deg(u) + deg(v) - deg(u + v)`.
    pub fn cofacial_defect(&self, u: &[i64], v: &[i64]) -> Result<Q> {
        let w: Vec<i64> = u.iter().zip(v).map(|(a, b)| a + b).collect();
        Ok(self.degree(u)? + self.degree(v)? - self.degree(&w)?)
    }

    /// Lattice points of the cone with `D·deg ≤ k_max`, with their degree
    /// numerators, sorted by degree and then lexicographically.
    pub fn lattice_points_upto(&self, k_max: i64) -> Vec<(Vec<i64>, i64)> {
        let n = self.n;
        let mut lo = vec![0i64; n];
        let mut hi = vec![0i64; n];
        for i in 0..n {
            let mn = self.points.iter().map(|p| p[i]).min().unwrap();
            let mx = self.points.iter().map(|p| p[i]).max().unwrap();
            lo[i] = Integer::div_floor(&(k_max * mn), &self.den);
            hi[i] = Integer::div_ceil(&(k_max * mx), &self.den);
        }
        let mut out = Vec::new();
        let mut u = lo.clone();
        loop {
            if self.in_cone(&u) {
                let d = self.degree_num_unchecked(&u);
                if d <= k_max {
                    out.push((u.clone(), d));
                }
            }
            // odometer
            let mut i = 0;
            loop {
                if i == n {
                    out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
                    return out;
                }
                if u[i] < hi[i] {
                    u[i] += 1;
                    break;
                }
                u[i] = lo[i];
                i += 1;
            }
        }
    }

    /// `W(0), ..., W(k_max)`: lattice points of degree `k/D`.
    pub fn weight_counts(&self, k_max: i64) -> Vec<u64> {
        let mut w = vec![0u64; k_max as usize + 1];
        for (_, d) in self.lattice_points_upto(k_max) {
            w[d as usize] += 1;
        }
        w
    }

    /// The q-Hodge polygon: a side of slope `a(p-1)j/D` and width `W(j)`
    /// for each `j ≤ k_max`.
    pub fn hodge_polygon(&self, p: u64, a: u32, k_max: i64) -> NewtonPolygon {
        let scale = a as i64 * (p as i64 - 1);
        self.polygon_with_scale(scale, k_max)
    }

    /// Slopes `j/D`: the q-Hodge polygon divided by `a(p-1)`.
    pub fn absolute_hodge_polygon(&self, k_max: i64) -> NewtonPolygon {
        self.polygon_with_scale(1, k_max)
    }

    fn polygon_with_scale(&self, scale: i64, k_max: i64) -> NewtonPolygon {
        let w = self.weight_counts(k_max);
        let sides: Vec<(Q, i64)> = w
            .iter()
            .enumerate()
            .map(|(j, &c)| (Q::new(scale * j as i64, self.den), c as i64))
            .collect();
        NewtonPolygon::from_sides(&sides)
    }
}

/// All facets by exhaustive search over `n`-subsets of the points.
fn find_facets(n: usize, points: &[Vec<i64>]) -> Vec<Facet> {
    let mut facets: Vec<Facet> = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    let m = points.len();
    if m < n {
        return facets;
    }
    loop {
        let base = &points[idx[0]];
        let rows: Vec<Vec<i64>> = idx[1..]
            .iter()
            .map(|&j| points[j].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        if let Some(mut normal) = normal_vector(&rows) {
            let mut height = dot(&normal, base);
            let vals: Vec<i64> = points.iter().map(|p| dot(&normal, p)).collect();
            let below = vals.iter().all(|&v| v <= height);
            let above = vals.iter().all(|&v| v >= height);
            if above && !below {
                normal.iter_mut().for_each(|x| *x = -*x);
                height = -height;
            }
            if below != above {
                let f = Facet { normal, height };
                if !facets.contains(&f) {
                    facets.push(f);
                }
            }
        }
        // next combination
        let mut i = n;
        loop {
            if i == 0 {
                facets.sort();
                return facets;
            }
            i -= 1;
            if idx[i] < m - n + i {
                idx[i] += 1;
                for j in i + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}
