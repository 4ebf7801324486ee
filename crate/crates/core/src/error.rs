use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of a formula.
    #[error("{what} out of domain: {detail}")]
    Domain { what: &'static str, detail: String },

    /// A model or grid field failed validation.
    #[error("invalid {field}: {reason}")]
    InvalidField { field: &'static str, reason: String },

    /// A theorem hypothesis required by the operation does not hold.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// The literature case table has no entry for this parameter combination.
    #[error("uncovered case: {0}")]
    UncoveredCase(String),

    #[error("empty grid: {0}")]
    EmptyGrid(&'static str),

    #[error("configuration error: {0}")]
    Config(String),

    /// A numerical procedure did not reach its tolerance.
    #[error("not converged: {0}")]
    NotConverged(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { what, detail: detail.into() }
    }

    pub(crate) fn field(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidField { field, reason: reason.into() }
    }
}
