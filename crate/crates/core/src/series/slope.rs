use std::collections::BTreeMap;

use super::polygon::{NewtonPolygon, Q};

/// The slope series `Σ t^λ` of a polygon, as a multiset of slopes.
///
/// `complete_below = Some(c)` means the multiset is only known for slopes
/// `< c` (the polygon was a prefix, or an infinite factor was truncated);
/// `None` means it is the full, finite multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeSeries {
    pub slopes: BTreeMap<Q, u64>,
    pub complete_below: Option<Q>,
}

impl SlopeSeries {
    /// The identity element `t^0`.
    pub fn one() -> Self {
        let mut slopes = BTreeMap::new();
        slopes.insert(Q::from(0), 1);
        SlopeSeries {
            slopes,
            complete_below: None,
        }
    }

    pub fn from_slopes(list: &[(Q, u64)]) -> Self {
        let mut slopes = BTreeMap::new();
        for &(s, m) in list {
            if m > 0 {
                *slopes.entry(s).or_insert(0) += m;
            }
        }
        SlopeSeries {
            slopes,
            complete_below: None,
        }
    }

    /// `1/(1-t)^n = Σ_j binom(n+j-1, j) t^j`, kept for `j < depth`.
    pub fn inverse_one_minus_t_pow(n: u32, depth: u64) -> Self {
        let mut slopes = BTreeMap::new();
        for j in 0..depth {
            slopes.insert(Q::from(j as i64), binomial(n as u64 + j - 1, j.min(n as u64 - 1)));
        }
        SlopeSeries {
            slopes,
            complete_below: Some(Q::from(depth as i64)),
        }
    }

    /// Slopes of the certified part of a polygon. The last certified side
    /// may continue past the certified range, so its slope is where the
    /// multiset stops being complete (unless `finished` says the polygon is
    /// the whole thing).
    pub fn from_polygon(p: &NewtonPolygon, finished: bool) -> Self {
        let prefix = p.certified_prefix();
        let sides = prefix.sides();
        let mut s = SlopeSeries::from_slopes(
            &sides.iter().map(|&(sl, w)| (sl, w as u64)).collect::<Vec<_>>(),
        );
        if !(finished && p.certified_upto >= p.end()) {
            s.complete_below = Some(sides.last().map_or(Q::from(0), |x| x.0));
            if let Some(c) = s.complete_below {
                s.slopes.retain(|&k, _| k < c);
            }
        }
        s
    }

    pub fn min_slope(&self) -> Option<Q> {
        self.slopes.keys().next().copied()
    }

    /// Product of slope series: slopes add, multiplicities multiply.
    pub fn mul(&self, other: &SlopeSeries) -> SlopeSeries {
        let mut slopes = BTreeMap::new();
        for (&a, &ma) in &self.slopes {
            for (&b, &mb) in &other.slopes {
                *slopes.entry(a + b).or_insert(0) += ma * mb;
            }
        }
        // a product slope is complete if every way of reaching it is
        let bound_from = |cut: Option<Q>, partner: &SlopeSeries| {
            cut.map(|c| c + partner.min_slope().unwrap_or(Q::from(0)))
        };
        let complete_below = match (
            bound_from(self.complete_below, other),
            bound_from(other.complete_below, self),
        ) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        if let Some(c) = complete_below {
            slopes.retain(|&k, _| k < c);
        }
        SlopeSeries {
            slopes,
            complete_below,
        }
    }

    /// Restrict to slopes below `c`.
    pub fn truncate_below(&self, c: Q) -> SlopeSeries {
        let mut slopes = self.slopes.clone();
        slopes.retain(|&k, _| k < c);
        let complete_below = Some(self.complete_below.map_or(c, |x| x.min(c)));
        SlopeSeries {
            slopes,
            complete_below,
        }
    }

    /// The polygon with these slopes, certified on its whole length.
    pub fn to_polygon(&self) -> NewtonPolygon {
        let sides: Vec<(Q, i64)> = self.slopes.iter().map(|(&s, &m)| (s, m as i64)).collect();
        NewtonPolygon::from_sides(&sides)
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.slopes.values().sum()
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from(n)
    }

    #[test]
    fn identity() {
        let a = SlopeSeries::from_slopes(&[(Q::new(1, 2), 2), (q(3), 1)]);
        assert_eq!(a.mul(&SlopeSeries::one()), a);
    }

    #[test]
    fn times_geometric() {
        let a = SlopeSeries::from_slopes(&[(q(0), 1), (q(1), 1)]);
        let g = SlopeSeries::inverse_one_minus_t_pow(1, 6);
        let prod = a.mul(&g);
        let expect: Vec<(Q, u64)> = vec![(q(0), 1), (q(1), 2), (q(2), 2), (q(3), 2), (q(4), 2), (q(5), 2)];
        assert_eq!(prod.slopes.into_iter().collect::<Vec<_>>(), expect);
        assert_eq!(prod.complete_below, Some(q(6)));
    }

    #[test]
    fn binomial_tail() {
        let g = SlopeSeries::inverse_one_minus_t_pow(2, 4);
        assert_eq!(g.slopes.values().copied().collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        let g3 = SlopeSeries::inverse_one_minus_t_pow(3, 4);
        assert_eq!(g3.slopes.values().copied().collect::<Vec<_>>(), vec![1, 3, 6, 10]);
    }

    #[test]
    fn polygon_roundtrip() {
        let p = NewtonPolygon::from_sides(&[(q(0), 1), (Q::new(1, 3), 2), (q(2), 1)]);
        let s = SlopeSeries::from_polygon(&p, true);
        assert_eq!(s.complete_below, None);
        assert_eq!(s.to_polygon(), p);
        let open = SlopeSeries::from_polygon(&p, false);
        assert_eq!(open.complete_below, Some(q(2)));
        assert_eq!(open.total_multiplicity(), 3);
    }
}
