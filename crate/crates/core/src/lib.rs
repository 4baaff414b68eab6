//! T-adic exponential sums of Laurent polynomials over finite fields.
//!
//! The crate computes the T-adic sums `S_f(k, T)`, the L- and C-functions
//! built from them, their Newton polygons, and the combinatorial Hodge
//! polygon of the Newton polytope. A second route to the C-function goes
//! through a truncated Dwork operator, so that the two can be checked
//! against each other.

pub mod arith;
pub mod dwork;
pub mod error;
pub mod parse;
pub mod polytope;
pub mod series;
pub mod sums;

pub use error::{Error, Result};
