use thiserror::Error;

/// Errors raised by the library.
///
/// Everything except [`Error::TheoremViolation`] describes bad input or a
/// violated precondition. `TheoremViolation` means an internal consistency
/// check failed (a result the mathematics guarantees did not hold).
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("empty vertex label")]
    EmptyLabel,

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("points not on H_d: sum of coordinates of `{0}` is {1}, expected 1")]
    NotOnHyperplane(String, String),

    #[error("point `{label}` has {got} coordinates, expected {expected}")]
    DimensionMismatch { label: String, got: usize, expected: usize },

    #[error("general position violated: `{0}` and `{1}` share coordinate {2}")]
    GeneralPosition(String, String, usize),

    #[error("not a positive simplex: coordinate sum {0} < 1")]
    NotPositive(String),

    #[error("element `{0}` is not a vertex of the complex")]
    NotAVertex(String),

    #[error("invalid rational `{0}`")]
    BadRational(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
