use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polyhedron is empty")]
    Infeasible,

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("instance too large: {0}")]
    Size(String),

    #[error("search budget exhausted: {0}")]
    Budget(String),

    #[error("point {col} lies outside the polytope (negative slack on row {row})")]
    PointOutside { row: usize, col: usize },

    #[error("inequality {row} is not tight anywhere on the polytope")]
    NotBinding { row: usize },

    #[error("slack map is not injective on the affine hull")]
    NotInjective,

    #[error("factorization mismatch at ({row}, {col})")]
    FactorizationMismatch { row: usize, col: usize },

    #[error("extension does not project onto the target: {0}")]
    NotVerified(String),

    /// Signals a bug: a state the mathematics rules out was reached.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    }
}
