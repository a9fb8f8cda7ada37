use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the arguments was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A certified error exceeded the budget assigned to it.
    #[error("budget exceeded for term {index}: certified error {error:.6e} > budget {budget:.6e}")]
    BudgetExceeded { index: usize, error: f64, budget: f64 },

    /// The configuration document could not be parsed or is inconsistent.
    #[error("config: {0}")]
    Config(String),

    /// A self-check on a recomputed constant failed.
    #[error("internal assertion failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
