use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not positive definite (pivot {pivot})")]
    NotPositiveDefinite { pivot: usize },

    #[error("eigensolver did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("bordered matrix is singular (Schur complement {schur:e})")]
    SingularBorder { schur: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point outside the domain: {0}")]
    DomainViolation(String),

    #[error("unsupported kernel family for this operation: {0}")]
    UnsupportedFamily(String),

    #[error("feature count {count} exceeds the configured capacity")]
    CapacityExceeded { count: u128 },

    #[error("ridge system is singular (pivot {pivot})")]
    SingularSystem { pivot: usize },

    #[error("quadrature does not match the domain: {0}")]
    QuadratureMismatch(String),

    #[error("lattice truncation too small: cutoff {cutoff}, tail ratio {tail_ratio:e}")]
    TruncationTooSmall { cutoff: usize, tail_ratio: f64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("closed form not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid regime: {0}")]
    InvalidRegime(String),

    #[error("input must be positive: {0}")]
    NonPositiveInput(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("budget exceeded after {completed} completed cells")]
    BudgetExceeded { completed: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Json(_) | Error::InvalidArgument(_) => 1,
            Error::BudgetExceeded { .. } => 3,
            _ => 2,
        }
    }
}
