use thiserror::Error;

/// Errors raised by the analyses in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not connected")]
    NotConnected,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("cap below distance (cap {cap}, distance {distance})")]
    CapBelowDistance { cap: usize, distance: usize },
    #[error("empty set")]
    EmptySet,
    #[error("invalid constant: {0}")]
    InvalidConstant(String),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("invalid seed path: {0}")]
    InvalidSeed(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("ball radius below threshold (distance to path {distance}, threshold {threshold})")]
    BallRadiusBelowThreshold { distance: u32, threshold: u32 },
    #[error("Y eccentricity too small (need a vertex at distance {needed}, eccentricity is {eccentricity})")]
    EccentricityTooSmall { needed: u32, eccentricity: u32 },
    #[error("invalid slope: {0}")]
    InvalidSlope(String),
    #[error("invalid marking: {0}")]
    InvalidMarking(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("curve equals annulus core")]
    CurveEqualsCore,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
