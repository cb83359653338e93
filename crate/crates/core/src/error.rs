use thiserror::Error;

use crate::dynamics::OrbitReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("polynomial degree {degree} exceeds the factorization bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },

    #[error("matrix is not expanding: eigenvalue estimate {re} + {im}i has modulus {modulus} <= 1 + tolerance")]
    NotExpanding { re: f64, im: f64, modulus: f64 },

    #[error("root moduli could not be separated at {bits} bits of precision")]
    PrecisionExhausted { bits: u32 },

    #[error("subspace basis columns are linearly dependent")]
    DependentColumns,

    #[error("subgroup must be connected")]
    NotConnected,

    #[error("jacobian is rank deficient at the base point")]
    RankDeficient,

    #[error("{what} did not stabilize within a budget of {budget}")]
    BudgetExceeded { what: &'static str, budget: usize },

    #[error("no exact cycle within {} iterations; window limit reported as approximate", .0.orbit.len().saturating_sub(1))]
    OrbitBudgetExceeded(Box<OrbitReport>),

    #[error("iterate magnitude overflow at step {step}")]
    Overflow { step: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code used by the JSON front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonSquare { .. } => "NON_SQUARE",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::EmptyMatrix => "EMPTY_MATRIX",
            Error::DegreeTooLarge { .. } => "DEGREE_TOO_LARGE",
            Error::NotExpanding { .. } => "NOT_EXPANDING",
            Error::PrecisionExhausted { .. } => "PRECISION_EXHAUSTED",
            Error::DependentColumns => "DEPENDENT_COLUMNS",
            Error::NotConnected => "NOT_CONNECTED",
            Error::RankDeficient => "RANK_DEFICIENT",
            Error::BudgetExceeded { .. } | Error::OrbitBudgetExceeded(_) => "BUDGET_EXCEEDED",
            Error::Overflow { .. } => "OVERFLOW",
            Error::Precondition(_) => "PRECONDITION",
            Error::Invariant(_) => "INVARIANT",
            Error::Parse(_) => "PARSE",
        }
    }
}
