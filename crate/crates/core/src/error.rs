use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A linear-algebra strand would exceed the configured row bound.
    #[error("too large: {what} needs {rows} rows, bound is {bound}")]
    TooLarge {
        what: String,
        rows: usize,
        bound: usize,
    },

    #[error("zero module: series numerator vanishes identically")]
    ZeroModule,

    #[error("value does not fit: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
