use thiserror::Error;

/// Failures raised by the algebra engine and the batch front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid truncation: {0}")]
    Truncation(String),

    /// Input fails a structural precondition (reality, weight floor, killed shapes, ...).
    #[error("validation failed: {0}")]
    Validation(String),

    /// A hypersurface that should be a weight >= 3 perturbation of the model is not.
    #[error("perturbation violation: offending monomials {0:?}")]
    PerturbationViolation(Vec<[u32; 5]>),

    /// The per-weight homological system is inconsistent or has a nontrivial kernel.
    #[error("decomposition failure at weight {weight}: {reason}")]
    Decomposition { weight: u32, reason: String },

    /// A degree step of the Levi-determinant sweep was not uniquely solvable.
    #[error("triangularity breach at standard degree {degree}: {reason}")]
    Triangularity { degree: u32, reason: String },

    #[error("iteration did not stabilise: {0}")]
    NoConvergence(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
