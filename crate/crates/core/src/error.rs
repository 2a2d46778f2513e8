use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("exponential base has a zero coordinate at index {0}")]
    ZeroExponentialCoordinate(usize),
    #[error("difference product needs at least one shift")]
    EmptyShiftList,
    #[error("expected a single exponential monomial, found {0} terms")]
    MultiTermInput(usize),
    #[error("infinite order: the input vanishes identically")]
    InfiniteOrder,
    #[error("infinite zero set; supply candidate exponentials")]
    InfiniteZeroSet,
    #[error("box too small for the support of generator {0}")]
    BoxTooSmall(usize),
    #[error("exponential {0} is not a root of the ideal")]
    NotARoot(String),
    #[error("no default bound available at {0}: the local multiplicity did not stabilize; supply one explicitly")]
    BoundRequired(String),
    #[error("negative exponent in a polynomial")]
    NegativeExponent,
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "E_DIM",
            Error::ZeroDimension => "E_DIM",
            Error::ZeroExponentialCoordinate(_) => "E_ZERO_BASE",
            Error::EmptyShiftList => "E_EMPTY_SHIFTS",
            Error::MultiTermInput(_) => "E_MULTI_TERM",
            Error::InfiniteOrder => "E_INFINITE_ORDER",
            Error::InfiniteZeroSet => "E_INFINITE_ZERO_SET",
            Error::BoxTooSmall(_) => "E_BOX_TOO_SMALL",
            Error::NotARoot(_) => "E_NOT_A_ROOT",
            Error::BoundRequired(_) => "E_BOUND_REQUIRED",
            Error::NegativeExponent => "E_NEGATIVE_EXPONENT",
            Error::Consistency(_) => "E_CONSISTENCY",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
