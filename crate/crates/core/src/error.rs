use thiserror::Error;

/// Library error kinds, aligned with the CLI exit-code contract:
/// schema and domain errors map to exit 2, precondition violations to exit 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input does not parse or violates the documented JSON schema.
    #[error("schema error: {0}")]
    Schema(String),
    /// A parameter lies outside an operation's documented domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A structural precondition does not hold for the given inputs.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// Process exit code for this error kind: 2 for parse/domain, 3 for preconditions.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema(_) | Error::Domain(_) => 2,
            Error::Precondition(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
