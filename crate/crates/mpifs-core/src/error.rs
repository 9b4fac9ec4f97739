//! Error type shared by all modules of the crate.

use crate::maxplus::GridShape;
use thiserror::Error;

/// Errors produced by density, system, grid, engine and dimension operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A density with no finite value where a non-empty support is required.
    #[error("density has empty support")]
    EmptySupport,

    /// Truncation order outside the usable range.
    #[error("invalid truncation order {n}{}", match .available {
        Some(a) => format!(" (explicit family provides only {a} maps)"),
        None => String::new(),
    })]
    InvalidTruncation { n: usize, available: Option<usize> },

    /// A map family whose Lipschitz bound is not strictly below one.
    #[error("map family is not contractive (Lipschitz bound {lipschitz})")]
    NotContractive { lipschitz: f64 },

    /// Unrecognised builtin family name.
    #[error("unknown builtin family `{name}`")]
    UnknownFamily { name: String },

    /// A coordinate left the unit domain by more than the projection tolerance.
    #[error("coordinate {coordinate} is outside the unit domain")]
    OutOfDomain { coordinate: f64 },

    /// Two grid-indexed objects with different shapes were combined.
    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch { expected: GridShape, found: GridShape },

    /// Word enumeration would exceed the configured evaluation budget.
    #[error("word enumeration needs {required} evaluations, budget is {budget}")]
    OracleBudgetExceeded { required: u128, budget: u64 },

    /// `k_max` outside `2 ..= ceil(N/2)` for a series of length `N`.
    #[error("scale bound k_max={k_max} invalid for series of length {series_len}")]
    InvalidScale { k_max: usize, series_len: usize },

    /// Fewer than two distinct abscissae supplied to the least-squares fit.
    #[error("degenerate least-squares fit: fewer than two distinct abscissae")]
    DegenerateFit,

    /// A series value that is NaN or infinite where finite data is required.
    #[error("non-finite value at position {index}")]
    NonFiniteInput { index: usize },

    /// Constructor argument violating a documented precondition.
    #[error("invalid input: {reason}")]
    InvalidInput { reason: String },
}

impl Error {
    pub(crate) fn invalid(reason: impl Into<String>) -> Self {
        Error::InvalidInput { reason: reason.into() }
    }
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
