use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix of {rows}x{cols} entries exceeds the size guard of {limit}")]
    SizeGuard { rows: usize, cols: usize, limit: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: String, found: String },

    #[error("column {column} of the denominator does not lie in the numerator")]
    NotContained { column: usize },

    #[error("associativity fails on basis triple ({i}, {j}, {l})")]
    NotAssociative { i: usize, j: usize, l: usize },

    #[error("unit law fails on the {side} at basis element {index}")]
    UnitLaw { index: usize, side: &'static str },

    #[error("{law} fails at basis indices ({i}, {j})")]
    ActionAxiom { law: &'static str, i: usize, j: usize },

    #[error("the unit is not the first basis vector; canonicalize the basis first")]
    NonUnitalBasis,

    #[error("the unit has no unimodular coordinate, cannot move it into the basis")]
    UnitNotUnimodular,

    #[error("algebra is not commutative: e{i}·e{j} != e{j}·e{i}")]
    NotCommutative { i: usize, j: usize },

    #[error("not a derivation: Leibniz rule fails on ({i}, {j})")]
    NotADerivation { i: usize, j: usize },

    #[error("not a 2-cocycle: coboundary nonzero on basis triple ({i}, {j}, {l})")]
    NotACocycle { i: usize, j: usize, l: usize },

    #[error("crossed product has no unit")]
    NoUnit,

    #[error("invalid extension: {0}")]
    InvalidExtension(String),

    #[error("operation requires {0}")]
    Unsupported(String),

    #[error("enumeration of {count} cochains exceeds the limit {limit}")]
    EnumerationTooLarge { count: u128, limit: u128 },

    #[error("sequence is not regular: fails at index {index}")]
    NotRegular { index: usize },

    #[error("degree cap {cap} too small, need at least {needed}")]
    CapTooSmall { cap: usize, needed: usize },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for errors raised by the size guard rather than by bad input.
    pub fn is_size_guard(&self) -> bool {
        matches!(self, Error::SizeGuard { .. } | Error::EnumerationTooLarge { .. })
    }
}
