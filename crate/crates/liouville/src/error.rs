use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the arguments was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested computation would materialize more symbols than the
    /// configured budget allows.
    #[error("budget exceeded: requested {requested} symbols, cap is {cap}")]
    BudgetExceeded { requested: u128, cap: u64 },

    /// A number required to be prime was not.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// Reading input or writing payload failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 2,
            _ => 1,
        }
    }
}
