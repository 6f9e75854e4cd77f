use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("unbound fixpoint variable {0}")]
    UnboundVariable(String),
    #[error("fixpoint variable {0} occurs negatively")]
    NegativeVariable(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("fresh name {0} already occurs")]
    NameCollision(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not definable: {0}")]
    NotDefinable(String),
    #[error("not found: {0}")]
    NotFound(String),
    /// An internal self-check failed. Always a bug, never a user error.
    #[error("internal verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
