use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("element index {index} is outside F_{q}")]
    ElementOutOfRange { index: u32, q: u32 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u32, right: u32 },

    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("capacity exceeded: {what} needs {needed} steps, budget is {budget}")]
    Capacity {
        what: &'static str,
        needed: u128,
        budget: u64,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("transform left an irrational coefficient: {0}")]
    NonRational(String),

    #[error("malformed document: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
