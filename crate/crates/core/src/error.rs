use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed code {input:?}: {reason}")]
    MalformedCode { input: String, reason: String },

    #[error("{what} {requested} exceeds the limit of {limit}")]
    SizeLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("invalid equation: {0}")]
    InvalidSpec(String),

    #[error("index {index} is beyond the truncation order {order}")]
    OrderExceeded { index: usize, order: usize },

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("operation {op:?} expects {expected} children, got {found}")]
    ArityMismatch {
        op: String,
        expected: usize,
        found: usize,
    },

    #[error("unknown operation {0:?}")]
    UnknownOperation(String),

    #[error("signature has nullary or unary operations, so trees with a fixed leaf count are infinite; supply a node bound")]
    Nonfinite,
}
