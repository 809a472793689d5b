//! Instance generators for the two hardness constructions: 3-SAT to
//! minimum spanner on happy graphs, and multicolored clique to minimum
//! strict spanner on graphs of small feedback vertex number.

mod mcc;
mod sat;

pub use mcc::{
    edge_selection_gadget, gadget_witness_spanner, mcc_to_spanner_instance, mcc_witness_spanner, GadgetFragment,
    GadgetTag, MccInstance, MccReductionOutput, MccRole, SelectionRole,
};
pub use sat::{
    sat_to_spanner_instance, sat_two_source_variant, sat_witness_spanner, Literal, SatInstance, SatReductionOutput,
    SatRole, TwoSourceInstance,
};

use thiserror::Error;

use crate::tempgraph::GraphError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("formula has no clauses")]
    NoClauses,
    #[error("clause {clause} uses variable {var} but only {count} variables exist")]
    VariableOutOfRange { clause: usize, var: usize, count: usize },
    #[error("assignment has {got} values for {want} variables")]
    AssignmentLength { got: usize, want: usize },
    #[error("assignment leaves clause {clause} unsatisfied")]
    AssignmentDoesNotSatisfy { clause: usize },
    #[error("color pair ({i}, {j}) has {count} edges; an even positive count is required")]
    OddEdgeCount { i: usize, j: usize, count: usize },
    #[error("color {color} has no vertex adjacent to every other color")]
    NoUniversalVertex { color: usize },
    #[error("bad edge {index}: {reason}")]
    BadEdge { index: usize, reason: String },
    #[error("{0}")]
    InvariantViolated(String),
    #[error("{index} is not a selection edge of a gadget with {count} edges")]
    NotASelectionEdge { index: usize, count: usize },
    #[error("vertices of colors {i} and {j} are not adjacent")]
    NotAClique { i: usize, j: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}
