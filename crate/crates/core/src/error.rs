use thiserror::Error;

use crate::setfn::Subset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set must contain at least one element")]
    EmptyGroundSet,

    #[error("ground set of {n} elements exceeds the bitmask width of {max}")]
    GroundSetTooLarge { n: usize, max: usize },

    #[error("exhaustive {what} is bounded at {bound} free elements, got {n}; register a polynomial backend for larger instances")]
    EnumerationBound {
        what: &'static str,
        n: usize,
        bound: usize,
    },

    #[error("table has {got} entries, expected 2^{n} = {expected}")]
    TableLength {
        n: usize,
        expected: usize,
        got: usize,
    },

    #[error("p(empty set) must be 0, got {0}")]
    NonzeroEmpty(String),

    #[error("p(S) must be finite")]
    InfiniteFullSet,

    #[error("supermodular inequality fails for X = {x:?}, Y = {y:?}")]
    NotSupermodular { x: Subset, y: Subset },

    #[error("vector has dimension {got}, expected {expected}")]
    Dimension { expected: usize, got: usize },

    #[error("element index {0} is outside the ground set")]
    ElementOutOfRange(usize),

    #[error("order is not a permutation of the ground set")]
    NotAPermutation,

    #[error("p is -inf on the prefix set {0:?}")]
    InfinitePrefix(Subset),

    #[error("minor ground set must be a nonempty proper subset, got {0:?}")]
    DegenerateMinor(Subset),

    #[error("p(S - S-) is -inf, contraction undefined")]
    InfiniteContractionBase,

    #[error("-inf times a positive gap in the linear extension at prefix {0:?}")]
    InfiniteLovaszTerm(Subset),

    #[error("vector is not in the supermodular polyhedron Q")]
    NotInQ,

    #[error("vector is not a member of the M-convex set")]
    NotAMember,

    #[error("input is not dec-min: {0}")]
    NotDecMin(String),

    #[error("element {0} is not in the unit-gap support of the box")]
    NotInUnitSupport(usize),

    #[error("the rounding box contains no member of the M-convex set")]
    EmptyBox,

    #[error("element {0} has an infinite coordinate bound")]
    InfiniteBound(usize),

    #[error("bounds box volume {volume} exceeds cap {cap}")]
    CapExceeded { volume: u128, cap: u128 },

    #[error("arithmetic overflow while scaling rationals to integers")]
    Overflow,

    #[error("invalid instance: {0}")]
    Invalid(String),

    #[error("malformed instance file: {0}")]
    Parse(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Errors that mean the instance is outside what a backend can handle,
    /// as opposed to an invalid instance.
    pub fn is_size_limit(&self) -> bool {
        matches!(
            self,
            Error::EnumerationBound { .. }
                | Error::CapExceeded { .. }
                | Error::GroundSetTooLarge { .. }
        )
    }
}
