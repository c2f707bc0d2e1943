use thiserror::Error;

/// Errors surfaced by kernel evaluation, sampling and the experiment layer.
#[derive(Error, Debug)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("matrix is not positive semidefinite: {0}")]
    NotPsd(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("capability error: {0}")]
    Capability(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the CLI: schema/usage problems are 2,
    /// capability refusals are 3, anything else is 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_) | Error::Domain(_) | Error::Json(_) => 2,
            Error::Capability(_) => 3,
            _ => 1,
        }
    }
}
