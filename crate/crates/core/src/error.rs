use thiserror::Error;

/// Errors raised by graph and representation construction and the text formats.
#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("vertex {0} has an empty interval list")]
    EmptyIntervals(String),
    #[error("vertex {vertex} has an inverted interval [{left}, {right}]")]
    InvertedInterval {
        vertex: String,
        left: i64,
        right: i64,
    },
    #[error("{context}: input is not an interval graph")]
    NotInterval { context: &'static str },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("oracle guard violated: {0}")]
    Guard(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
