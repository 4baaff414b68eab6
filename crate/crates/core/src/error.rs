use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The variants split into three families: bad input (`Parse`,
/// `InvalidInput`, ...), precision that cannot be certified
/// (`PrecisionUnderflow`, `PrecisionRule`, `TruncationInsufficient`), and
/// internal consistency failures (`IntegralityViolation`,
/// `TheoremViolation`, ...) which mean a bug rather than a user mistake.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field of size {p}^{a} is too large to enumerate")]
    FieldTooLarge { p: u64, a: u32 },

    #[error("precision underflow: need {needed} p-adic digits, only {available} available")]
    PrecisionUnderflow { needed: u32, available: u32 },

    #[error("precision rule violated: {0}")]
    PrecisionRule(String),

    #[error("truncation insufficient: {0}")]
    TruncationInsufficient(String),

    #[error("integrality violation: {0}")]
    IntegralityViolation(String),

    #[error("element is not a unit")]
    NonUnit,

    #[error("dimension {0} is too large (at most 4 variables are supported)")]
    DimensionTooLarge(usize),

    #[error("degenerate polytope: {0}")]
    Degenerate(String),

    #[error("point {0:?} is not in the cone of the Newton polytope")]
    NotInCone(Vec<i64>),

    #[error("restriction to the face is empty")]
    EmptyRestriction,

    #[error("basis too small: degree bound {bound} is below {needed}")]
    BasisTooSmall { bound: String, needed: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("polygons have no common certified range")]
    IncomparableRange,

    #[error("division by a power of pi is not exact: {0}")]
    DivisionNotExact(String),

    #[error("theorem violation (internal error): {0}")]
    TheoremViolation(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
