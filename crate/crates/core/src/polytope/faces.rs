use std::collections::BTreeSet;

use super::degree::DegreeData;
use super::laurent::LaurentPoly;
use super::linalg::{affine_dim, det};
use crate::error::Result;

/// A closed face of `Δ`, described by the points of `Δ` (origin and
/// exponents) it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub dim: usize,
    /// Indices into `DegreeData::facets` of the facets containing it.
    pub facets: Vec<usize>,
    /// Indices into `DegreeData::points`.
    pub point_ids: Vec<usize>,
    pub contains_origin: bool,
}

impl Face {
    pub fn points<'a>(&self, dd: &'a DegreeData) -> Vec<&'a [i64]> {
        self.point_ids.iter().map(|&i| dd.points[i].as_slice()).collect()
    }

    /// Whether a lattice point of `Δ` lies on the face (it must satisfy the
    /// equations of all supporting facets).
    pub fn contains(&self, dd: &DegreeData, u: &[i64]) -> bool {
        self.facets.iter().all(|&i| dd.facets[i].contains(u))
    }
}

/// All proper nonempty faces of `Δ`, as intersections of facets, plus `Δ`
/// itself (with an empty facet list). Sorted by dimension.
pub fn face_lattice(dd: &DegreeData) -> Vec<Face> {
    let on = |fi: usize| -> BTreeSet<usize> {
        (0..dd.points.len())
            .filter(|&j| dd.facets[fi].contains(&dd.points[j]))
            .collect()
    };
    let mut sets: Vec<BTreeSet<usize>> = Vec::new();
    for fi in 0..dd.facets.len() {
        let s = on(fi);
        if !sets.contains(&s) {
            sets.push(s);
        }
    }
    let mut i = 0;
    while i < sets.len() {
        for j in 0..i {
            let s: BTreeSet<usize> = sets[i].intersection(&sets[j]).copied().collect();
            if !s.is_empty() && !sets.contains(&s) {
                sets.push(s);
            }
        }
        i += 1;
    }
    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|s| {
            let ids: Vec<usize> = s.into_iter().collect();
            let pts: Vec<&[i64]> = ids.iter().map(|&i| dd.points[i].as_slice()).collect();
            let facets = (0..dd.facets.len())
                .filter(|&fi| pts.iter().all(|p| dd.facets[fi].contains(p)))
                .collect();
            Face {
                dim: affine_dim(&pts) as usize,
                facets,
                contains_origin: ids.contains(&0),
                point_ids: ids,
            }
        })
        .collect();
    faces.push(Face {
        dim: dd.n,
        facets: Vec::new(),
        point_ids: (0..dd.points.len()).collect(),
        contains_origin: true,
    });
    faces.sort_by(|a, b| (a.dim, &a.point_ids).cmp(&(b.dim, &b.point_ids)));
    faces
}

/// Closed faces of codimension one that avoid the origin.
pub fn codim1_faces_no_origin(dd: &DegreeData) -> Vec<Face> {
    face_lattice(dd)
        .into_iter()
        .filter(|f| f.dim + 1 == dd.n && !f.contains_origin)
        .collect()
}

/// Closed faces of every dimension `< n` that avoid the origin.
pub fn faces_no_origin(dd: &DegreeData) -> Vec<Face> {
    face_lattice(dd)
        .into_iter()
        .filter(|f| f.dim < dd.n && !f.contains_origin)
        .collect()
}

/// `f_σ`: the terms of `f` whose exponents lie on the face.
pub fn restrict_to_face(f: &LaurentPoly, dd: &DegreeData, face: &Face) -> Result<LaurentPoly> {
    f.restrict(|u| face.contains(dd, u))
}

/// `n!·Vol(Δ)`, by coning from the origin over a triangulation of each
/// facet that avoids it. Faces are triangulated recursively by pulling
/// from their first point.
pub fn normalized_volume(dd: &DegreeData) -> u64 {
    let lattice = face_lattice(dd);
    let mut total: i128 = 0;
    for face in lattice.iter().filter(|f| f.dim + 1 == dd.n && !f.contains_origin) {
        for simplex in triangulate(&lattice, face) {
            let rows: Vec<Vec<i64>> = simplex.iter().map(|&i| dd.points[i].clone()).collect();
            total += det(&rows).abs();
        }
    }
    total as u64
}

fn triangulate(lattice: &[Face], face: &Face) -> Vec<Vec<usize>> {
    let apex = face.point_ids[0];
    if face.dim == 0 {
        return vec![vec![apex]];
    }
    let mut out = Vec::new();
    for sub in lattice.iter().filter(|g| {
        g.dim + 1 == face.dim
            && !g.point_ids.contains(&apex)
            && g.point_ids.iter().all(|i| face.point_ids.contains(i))
    }) {
        for mut s in triangulate(lattice, sub) {
            s.push(apex);
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volumes() {
        let seg = DegreeData::from_exponents(1, &[vec![5]]).unwrap();
        assert_eq!(normalized_volume(&seg), 5);
        let sperber = DegreeData::from_exponents(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
        assert_eq!(normalized_volume(&sperber), 3);
        let square = DegreeData::from_exponents(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(normalized_volume(&square), 2);
        let cube = DegreeData::from_exponents(
            3,
            &[
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![1, 1, 1],
            ],
        )
        .unwrap();
        assert_eq!(normalized_volume(&cube), 6);
    }

    #[test]
    fn sperber_codim_one_faces() {
        let dd = DegreeData::from_exponents(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
        let faces = codim1_faces_no_origin(&dd);
        assert_eq!(faces.len(), 3);
        assert!(faces.iter().all(|f| f.point_ids.len() == 2));
        // vertices are faces too
        assert_eq!(faces_no_origin(&dd).len(), 6);
    }
}
