//! Truncated series rings, series in `s` over them, Newton polygons and
//! slope series.

pub mod polygon;
pub mod slope;
pub mod sseries;
pub mod trunc;

pub use polygon::{agreement_upto, common_range, dominates, NewtonPolygon, Tail, Valuation, Q};
pub use slope::SlopeSeries;
pub use sseries::{exp_of_power_sums, power_sums_of, SSeries};
pub use trunc::{SeriesRing, TRing};
