//! Toolkit for diameter-critical graphs at desk scale.
//!
//! A graph is diameter-k-critical if its diameter equals `k` and deleting any
//! single edge raises the diameter above `k`. This crate provides:
//!
//! - [`graph`]: an immutable simple-graph type with BFS distance, diameter,
//!   and edge-deletion diameter queries.
//! - [`families`]: deterministic generators for the classical extremal
//!   families (balanced complete bipartite graphs, the hub-and-paths family
//!   `G_k`, and the clique-plus-matching families `G_{3,0}` / `G_{3,M}`).
//! - [`criticality`]: criticality verification, the i-associated /
//!   i-critical pair machinery, edge multiplicity, t-edges, the reduced
//!   subgraph G0, disjoint-neighborhood pairs, and the associated
//!   inequality checkers.
//! - [`hypergraph`]: 3-uniform hypergraph reductions (linearization,
//!   derandomized 3-partition, orientation-class selection, triangle
//!   detection) and an exhaustive solver for the largest triangle-free
//!   linear 3-uniform hypergraph on tiny vertex sets.
//! - [`search`]: exhaustive isomorphism-class enumeration and extremal
//!   search over diameter-k-critical graphs for small n.
//! - [`report`]: the machine-readable JSON analysis report.
//!
//! The `diamcrit` binary exposes all of it as a CLI; see the README.

pub mod criticality;
pub mod families;
pub mod formats;
pub mod graph;
pub mod hypergraph;
pub mod report;
pub mod search;

use graph::EdgeRef;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    InvalidVertex { vertex: u32, n: usize },
    #[error("invalid edge {u}-{v}")]
    InvalidEdge { u: u32, v: u32 },
    #[error("edge {0} not present in graph")]
    MissingEdge(EdgeRef),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{what} too large: {value} exceeds supported limit {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("hypergraph is not linear")]
    NonLinearInput,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
