use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation was applied outside its mathematical domain
    /// (constant polynomial where a leading variable is needed, zero divisor, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A split routine was called on a node that does not satisfy its precondition.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A configured work cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
