use std::io;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input line (edge list, label table, gate set, ...).
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A precondition on an argument was violated.
    #[error("{0}")]
    InvalidArgument(String),

    /// A size or budget guard refused to run the operation.
    #[error("resource guard: {0}")]
    ResourceGuard(String),

    /// The cover instance cannot be solved: some ground pairs appear in no
    /// candidate set. Lists up to ten of them.
    #[error("infeasible cover instance: {uncoverable} pair(s) covered by no vertex, e.g. {examples}")]
    Infeasible { uncoverable: usize, examples: String },

    /// A discovery result failed its own validation pass.
    #[error("self-check failed: {check} reported {violations} violation(s)")]
    SelfCheckFailed { check: String, violations: u64 },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn guard(msg: impl Into<String>) -> Self {
        Error::ResourceGuard(msg.into())
    }
}
