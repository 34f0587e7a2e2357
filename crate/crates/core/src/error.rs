use thiserror::Error;

use crate::automata::SemiringTag;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unknown symbol '{0}'")]
    UnknownSymbol(String),

    #[error("semiring mismatch: {0} vs {1}")]
    TagMismatch(SemiringTag, SemiringTag),

    #[error("semiring {0} is not supported by this construction")]
    UnsupportedTag(SemiringTag),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("not equivalent, separating word: {word}")]
    NotEquivalent { word: String },

    #[error("inconsistent values: {0}")]
    InconsistentValues(String),

    #[error("coordinates {0:?} form an invariant zero-output set")]
    InvariantZeroSet(Vec<usize>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
