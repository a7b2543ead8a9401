use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("vertex id {id} out of range for a graph on {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("enumeration of {n}! = {orderings} orderings exceeds the limit n <= {limit}")]
    EnumerationLimit {
        n: usize,
        limit: usize,
        orderings: String,
    },

    #[error("exact independence number search is limited to n <= {limit}, got n = {n}")]
    AlphaLimit { n: usize, limit: usize },

    #[error("unknown estimand `{0}` (expected one of: i1, i2, p-i2, p-h)")]
    UnknownEstimand(String),
}

impl Error {
    /// Attach a line number to a construction error raised while parsing.
    pub(crate) fn at_line(self, line: usize) -> Error {
        match self {
            Error::Parse { .. } => self,
            other => Error::Parse {
                line,
                message: other.to_string(),
            },
        }
    }
}
