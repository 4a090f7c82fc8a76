//! Structural classification and center computations for Leavitt path
//! algebras `L_K(E)` of finite directed graphs, with an exact symbolic
//! engine that checks every central element it emits.

pub mod center;
pub mod classify;
pub mod engine;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod hereditary;
pub mod linalg;
pub mod random;
pub mod report;

pub use error::{Error, Result};
pub use graph::{parse_graph, Count, Cycle, Edge, Graph, Path, Vertex, VertexSet};
