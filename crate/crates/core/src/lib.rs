//! Graphs that are "almost interval": data model for multiple interval
//! representations, PQ-tree machinery, a recognition algorithm for graphs
//! representable with at most k extra intervals, and a suite of solvers whose
//! running time is exponential only in that surplus k. Every solver is paired
//! with a brute-force oracle for small instances.

pub mod cliques;
pub mod error;
pub mod fixtures;
pub mod gen;
pub mod graph;
pub mod interval;
pub mod io;
pub mod mir;
pub mod oracles;
pub mod pqtree;
pub mod recognition;
pub mod solvers;

pub use error::{Error, Result};
pub use graph::{Graph, VertexId, VertexSet};
pub use mir::{
    build_graph_from_representation, normalize_representation, validate_representation, Interval,
    Mir, MultiIntervalRepresentation, ValidationReport,
};
