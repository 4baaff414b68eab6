//! Newton polytope combinatorics: facets, the degree function, weights and
//! Hodge polygons, faces and restrictions, volume, non-degeneracy and the
//! exponent `I(Δ)`.

pub mod degree;
pub mod faces;
pub mod laurent;
pub mod linalg;
pub mod nondeg;

pub use degree::{DegreeData, Facet, OriginPosition};
pub use faces::{codim1_faces_no_origin, face_lattice, faces_no_origin, normalized_volume, restrict_to_face, Face};
pub use laurent::{LaurentPoly, MAX_VARS};
pub use nondeg::{exponent_i, is_nondegenerate, Nondegeneracy};
