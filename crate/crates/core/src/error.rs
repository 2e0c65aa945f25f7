use thiserror::Error;

use crate::geometry::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("point set must contain at least one node")]
    EmptyPointSet,

    #[error("non-finite coordinate at node {0}")]
    NonFiniteCoordinate(NodeId),

    #[error("radius map has {found} entries for {expected} nodes")]
    MissingRadius { expected: usize, found: usize },

    #[error("invalid radius {value} at node {node}")]
    InvalidRadius { node: NodeId, value: f64 },

    #[error("unknown node {0}")]
    UnknownNode(NodeId),

    #[error("node {0} is isolated; its closure radius is undefined")]
    IsolatedNode(NodeId),

    #[error("{{{0}, {1}}} is not an edge of the graph")]
    NotAnEdge(NodeId, NodeId),

    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),

    #[error("graph has no edges")]
    EmptyEdgeSet,

    #[error("need at least {needed} points, got {found}")]
    TooFewPoints { needed: usize, found: usize },

    #[error("node {node} is not in the local view of {center}")]
    NotInView { center: NodeId, node: NodeId },

    #[error("oracle supports {min}..={max} points, got {found}")]
    OracleRange { min: usize, max: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
