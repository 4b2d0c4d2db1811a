use alloc::string::String;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("generator index {index} out of range for a presentation with {len} generators")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operands live in different ambient groups")]
    AmbientMismatch,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(&'static str),
    #[error("subgroup orders are not coprime")]
    NotCoprime,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("budget exceeded: {what} needs {size}, limit {limit}")]
    BudgetExceeded { what: &'static str, size: String, limit: String },
    #[error("operation undefined on the trivial group")]
    TrivialGroup,
    #[error("engine invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn budget(what: &'static str, size: impl core::fmt::Display, limit: impl core::fmt::Display) -> Self {
        use alloc::string::ToString;
        Error::BudgetExceeded { what, size: size.to_string(), limit: limit.to_string() }
    }
}
