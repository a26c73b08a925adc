use thiserror::Error;

use crate::vset::VertexSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe of size {size} exceeds the configured limit of {limit}")]
    UniverseTooLarge { size: usize, limit: usize },

    #[error("element {element} is outside the universe 0..{universe}")]
    ElementOutOfRange { element: usize, universe: usize },

    #[error("sets over different universes ({left} vs {right})")]
    UniverseMismatch { left: usize, right: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertices {u} and {v} are in different components")]
    Unreachable { u: usize, v: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("family is not closed under intersection: {left} ∩ {right} is missing")]
    NotIntersectionClosed { left: VertexSet, right: VertexSet },

    #[error("family does not contain the full universe")]
    MissingUniverse,

    #[error("invalid puncture: {0}")]
    InvalidPuncture(String),

    #[error("images incomplete: f({generator}) = {image} is not in the supplied family")]
    ImagesIncomplete { generator: VertexSet, image: VertexSet },

    #[error("{what} exceeded the budget of {limit}")]
    BudgetExceeded { what: &'static str, limit: usize },

    #[error("not a partial cube")]
    NotPartialCube,

    #[error("infeasible instance: {0}")]
    Infeasible(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
