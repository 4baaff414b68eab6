use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Exact rationals used for valuations, slopes and polygon ordinates.
pub type Q = Ratio<i64>;

/// A valuation read off a truncated coefficient: either known, or only
/// bounded below because the coefficient vanished at working precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Exact(Q),
    AtLeast(Q),
}

impl Valuation {
    pub fn value(&self) -> Q {
        match *self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Valuation::Exact(_))
    }
}

/// What is known about the coefficients past the last computed one.
#[derive(Clone, Copy, Debug)]
pub enum Tail<'a> {
    /// Nothing: no vertex past the origin can be certified.
    Unknown,
    /// The series is a polynomial; there are no further points.
    Vanishing,
    /// Every point lies on or above this convex polygon, extended past its
    /// end with its last slope.
    Bounded(&'a NewtonPolygon),
}

/// A convex lower polygon starting at `(0,0)` with integer abscissae.
///
/// Only the part with `x ≤ certified_upto` is proven; the rest is the hull
/// of what was computed and may move once more terms are known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(i64, Q)>,
    pub certified_upto: i64,
}

fn cross(o: (i64, Q), a: (i64, Q), b: (i64, Q)) -> Q {
    let (ax, ay) = (Q::from(a.0 - o.0), a.1 - o.1);
    let (bx, by) = (Q::from(b.0 - o.0), b.1 - o.1);
    ax * by - ay * bx
}

/// Lower convex hull of points sorted by abscissa, collinear points dropped.
fn lower_hull(points: &[(i64, Q)]) -> Vec<(i64, Q)> {
    let mut hull: Vec<(i64, Q)> = Vec::new();
    for &pt in points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= Q::from(0) {
            hull.pop();
        }
        hull.push(pt);
    }
    hull
}

impl NewtonPolygon {
    /// A polygon known exactly on its whole length.
    pub fn exact(vertices: Vec<(i64, Q)>) -> Self {
        let end = vertices.last().map_or(0, |v| v.0);
        NewtonPolygon {
            vertices,
            certified_upto: end,
        }
    }

    /// Build from sides `(slope, width)` in non-decreasing slope order.
    pub fn from_sides(sides: &[(Q, i64)]) -> Self {
        let mut v = vec![(0, Q::from(0))];
        let (mut x, mut y) = (0i64, Q::from(0));
        for &(s, w) in sides {
            if w == 0 {
                continue;
            }
            x += w;
            y += s * Q::from(w);
            v.push((x, y));
        }
        Self::exact(lower_hull(&v))
    }

    /// Newton polygon of a series whose `k`-th coefficient has valuation
    /// `points[k]`.
    ///
    /// The hull is taken over the exactly known points. A vertex is
    /// certified when every point that is only bounded below (inside the
    /// computed range, or in the tail) provably stays on or above the
    /// polygon up to that vertex continued by its incoming side.
    pub fn from_valuations(points: &[Valuation], tail: Tail<'_>) -> Self {
        let exact: Vec<(i64, Q)> = points
            .iter()
            .enumerate()
            .filter_map(|(k, v)| match v {
                Valuation::Exact(y) => Some((k as i64, *y)),
                Valuation::AtLeast(_) => None,
            })
            .collect();
        if exact.is_empty() {
            return NewtonPolygon {
                vertices: vec![(0, Q::from(0))],
                certified_upto: 0,
            };
        }
        let vertices = lower_hull(&exact);
        let last_index = points.len() as i64 - 1;
        let tail_bound = |k: i64| -> Option<Q> {
            match tail {
                Tail::Bounded(lb) => Some(lb.eval_extended(k)),
                _ => None,
            }
        };

        let mut certified_upto = vertices[0].0;
        for j in 1..vertices.len() {
            let (xv, yv) = vertices[j];
            let (xu, yu) = vertices[j - 1];
            let s_in = (yv - yu) / Q::from(xv - xu);
            let line = |k: i64| yv + s_in * Q::from(k - xv);
            let reference = |k: i64| {
                if k <= xv {
                    interpolate(&vertices, k).expect("inside the hull")
                } else {
                    line(k)
                }
            };
            let mut ok = points.iter().enumerate().all(|(k, v)| match v {
                Valuation::Exact(_) => true,
                Valuation::AtLeast(c) => {
                    let k = k as i64;
                    let lb = tail_bound(k).map_or(*c, |b| b.max(*c));
                    lb >= reference(k)
                }
            });
            ok = ok
                && match tail {
                    Tail::Unknown => false,
                    Tail::Vanishing => true,
                    Tail::Bounded(lb) => lb.stays_above_line(last_index + 1, xv, yv, s_in),
                };
            if !ok {
                break;
            }
            certified_upto = xv;
        }
        NewtonPolygon {
            vertices,
            certified_upto,
        }
    }

    pub fn end(&self) -> i64 {
        self.vertices.last().map_or(0, |v| v.0)
    }

    /// Ordinate at integer `x`, `None` past the last vertex.
    pub fn eval(&self, x: i64) -> Option<Q> {
        interpolate(&self.vertices, x)
    }

    /// Ordinate at `x`, continuing past the end with the last slope.
    pub fn eval_extended(&self, x: i64) -> Q {
        if let Some(y) = self.eval(x) {
            return y;
        }
        let n = self.vertices.len();
        let (xl, yl) = self.vertices[n - 1];
        let s = if n >= 2 {
            let (xp, yp) = self.vertices[n - 2];
            (yl - yp) / Q::from(xl - xp)
        } else {
            Q::from(0)
        };
        yl + s * Q::from(x - xl)
    }

    /// Whether `eval_extended(k) ≥ y0 + s·(k - x0)` for every `k ≥ from`.
    fn stays_above_line(&self, from: i64, x0: i64, y0: Q, s: Q) -> bool {
        let line = |k: i64| y0 + s * Q::from(k - x0);
        // convex minus linear is convex: check the start, the vertices past
        // it, and the final direction
        if self.eval_extended(from) < line(from) {
            return false;
        }
        if self
            .vertices
            .iter()
            .filter(|v| v.0 > from)
            .any(|v| v.1 < line(v.0))
        {
            return false;
        }
        self.last_slope() >= s
    }

    pub fn last_slope(&self) -> Q {
        self.sides().last().map_or(Q::from(0), |s| s.0)
    }

    /// Sides as `(slope, width)`.
    pub fn sides(&self) -> Vec<(Q, i64)> {
        self.vertices
            .windows(2)
            .map(|w| {
                let dx = w[1].0 - w[0].0;
                ((w[1].1 - w[0].1) / Q::from(dx), dx)
            })
            .collect()
    }

    /// Multiply every ordinate by `factor`.
    pub fn rescale(&self, factor: Q) -> Self {
        NewtonPolygon {
            vertices: self.vertices.iter().map(|&(x, y)| (x, y * factor)).collect(),
            certified_upto: self.certified_upto,
        }
    }

    /// The certified part only.
    pub fn certified_prefix(&self) -> Self {
        let vertices = self
            .vertices
            .iter()
            .copied()
            .filter(|v| v.0 <= self.certified_upto)
            .collect();
        NewtonPolygon::exact(vertices)
    }

    /// Vertices lying in the certified range.
    pub fn certified_vertices(&self) -> Vec<(i64, Q)> {
        self.vertices
            .iter()
            .copied()
            .filter(|v| v.0 <= self.certified_upto)
            .collect()
    }
}

fn interpolate(vertices: &[(i64, Q)], x: i64) -> Option<Q> {
    if x < 0 {
        return None;
    }
    for w in vertices.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if x0 <= x && x <= x1 {
            return Some(y0 + (y1 - y0) * Q::new(x - x0, x1 - x0));
        }
    }
    match vertices {
        [(x0, y0), ..] if *x0 == x => Some(*y0),
        _ => None,
    }
}

/// The largest `x` up to which both polygons are certified and defined.
pub fn common_range(p: &NewtonPolygon, q: &NewtonPolygon) -> i64 {
    p.certified_upto.min(q.certified_upto).min(p.end()).min(q.end())
}

/// `p ≥ q` pointwise on the common certified range.
pub fn dominates(p: &NewtonPolygon, q: &NewtonPolygon) -> Result<bool> {
    let x = common_range(p, q);
    if x < 1 {
        return Err(Error::IncomparableRange);
    }
    Ok((0..=x).all(|k| p.eval(k) >= q.eval(k)))
}

/// The largest `x` in the common certified range such that the polygons
/// coincide on `[0, x]`.
pub fn agreement_upto(p: &NewtonPolygon, q: &NewtonPolygon) -> i64 {
    let x = common_range(p, q);
    let mut upto = 0;
    for k in 0..=x {
        if p.eval(k) != q.eval(k) {
            break;
        }
        upto = k;
    }
    upto
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vertices
            .iter()
            .map(|(x, y)| format!("({x},{y})"))
            .collect();
        write!(f, "{} certified<={}", parts.join(""), self.certified_upto)
    }
}
