use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("({x}, {y}) is not a Farey vertex: coordinates must be coprime and not both zero")]
    NotCoprime { x: String, y: String },
    #[error("operation needs an interior vertex, got endpoint {0}")]
    EndpointInput(String),
    #[error("malformed exponent sequence: {0}")]
    MalformedExponents(String),
    #[error("fin of endpoint {vertex} only exists on the {allowed} side")]
    InvalidFinSide { vertex: String, allowed: &'static str },
    #[error("vertex {0} appears twice")]
    DuplicateVertex(String),
    #[error("set is not closed under taking mothers: {0} is missing")]
    NotMotherClosed(String),
    #[error("consecutive vertices {0} and {1} do not span a Farey edge")]
    NotAFareyEdge(String, String),
    #[error("expected {expected} blocks or entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("path is not a ★-set")]
    NotStar,
    #[error("path is not a corona")]
    NotCorona,
    #[error("d.n.a. layer {layer} has length {got}, expected {expected}")]
    DnaLayerLength { layer: usize, expected: usize, got: usize },
    #[error("sub-level set exceeded {0} vertices; it is probably not finite")]
    Unbounded(usize),
    #[error("invalid norm: {0}")]
    InvalidNorm(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
