//! Interference-aware topology control for wireless ad-hoc networks.
//!
//! Nodes are points in `R^d`, each with a transmission radius. Two nodes share
//! a (bidirectional) link when each lies within the other's radius, and the
//! interference at a node is the number of other nodes whose radius covers it.
//!
//! The crate provides:
//!
//! * [`graph`]: the communication-graph model, interference counts, primitive
//!   and bridged edges, and membership in the class of graphs with no bridged
//!   primitive edge.
//! * [`construct`]: Euclidean MST, unit-disc graph and Gabriel∩UDG builders.
//! * [`reduction`]: the 2-local radius-reduction protocol.
//! * [`mobility`] and [`trace`]: node placement, mobility models and GPS trace
//!   ingestion.
//! * [`oracle`]: brute-force reference implementations for testing.
//! * [`topology`]: a name-keyed registry of topology-control strategies.

pub mod construct;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod mobility;
pub mod oracle;
pub mod reduction;
pub mod topology;
pub mod trace;

pub use error::{Error, Result};
pub use geometry::{distance, Edge, NodeId, Point, PointSet};
pub use graph::{CommGraph, EmbeddedGraph, Radius, RadiusMap};
