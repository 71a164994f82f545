use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system: {0}")]
    UnsupportedType(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("budget of {budget} exceeded: {hint}")]
    BudgetExceeded { budget: u64, hint: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
