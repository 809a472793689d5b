//! Temporal graphs and minimum temporal spanners.
//!
//! `tempgraph` holds the data model and text formats, `reach` the
//! time-respecting reachability primitives, `solver` the exact and
//! vertex-cover-parameterized spanner algorithms, and `reductions` the
//! generators for 3-SAT and multicolored-clique hardness instances.

pub mod generate;
pub mod reach;
pub mod reductions;
pub mod solver;
pub mod tempgraph;

pub use reach::Strictness;
pub use tempgraph::{GraphClass, Spanner, TemporalGraph, TimeEdge, VertexId};
