//! Exact truncated arithmetic: `Z/p^M`, finite fields, unramified and
//! cyclotomic extensions, and binomial series.

pub mod binomial;
pub mod cyclotomic;
pub mod field;
pub mod ring;
pub mod unramified;
pub mod zmod;

pub use binomial::{binomial_precision, one_plus_t_pow};
pub use cyclotomic::{CycElem, CycRing};
pub use field::{FieldCtx, Fq};
pub use ring::{div_int, PadicRing, Ring};
pub use unramified::{ZqElem, ZqRing};
pub use zmod::Zmod;
