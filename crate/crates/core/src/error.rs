use thiserror::Error;

use crate::graph::Time;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid label {0}: labels must be non-negative integers")]
    InvalidLabel(i64),
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("graph has no edges")]
    NoEdges,
    #[error("graphs do not share the same vertex set")]
    VertexSetMismatch,
    #[error("augmented graph does not contain every edge of the base graph")]
    NotAugmentation,
    #[error("input graph contains a cycle")]
    CyclicInput,
    #[error("target diameter must be at least 1, got {0}")]
    InvalidTarget(u32),
    #[error("target diameter {0} is below the minimum of {1} for this method")]
    TargetTooSmall(u32, u32),
    #[error("footprint is not a simple directed path: {0}")]
    NotAPath(String),
    #[error("static edge ({0}, {1}) carries more than one label")]
    NotSimple(String, String),
    #[error("shortcut ({0}, {1}) does not point forward along the path")]
    NotForward(usize, usize),
    #[error("edge between timed vertices cannot be translated: {0}")]
    MalformedEdge(String),
    #[error("shortcut ({0}, {1}) is not an edge of the transitive closure")]
    InvalidShortcut(usize, usize),
    #[error("search space of {0} candidate sets exceeds the limit of {1}")]
    TooLarge(u128, u128),
    #[error("generator spec is infeasible: {0}")]
    Infeasible(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("timed vertex for time {0} is outside the expansion")]
    TimeOutOfRange(Time),
}

pub type Result<T> = std::result::Result<T, Error>;
