//! Minimum temporal spanners: forced edges, an exact oracle, the XP
//! algorithm over a minimum vertex cover, and VC-tree decompositions.

mod decompose;
mod exact;
mod satenc;
mod template;
mod vcover;
mod xp;

pub use decompose::{vc_tree_decompose, VcTreeDecomposition};
pub use exact::{min_spanner_enumerate, min_spanner_exact, min_spanner_exact_with, ExactConfig, ExactStrategy};
pub use template::{enumerate_templates, instantiate_template, Instantiation, Template, TemplateNode};
pub use vcover::{is_vertex_cover, min_vertex_cover, VertexCover};
pub use xp::{min_spanner_xp_vc, min_spanner_xp_vc_with, select_extra_edges, Infeasible, XpConfig, XpStats};

use thiserror::Error;

use crate::reach::{ReachEngine, Strictness};
use crate::tempgraph::{Spanner, TemporalGraph, VertexId};

/// What a spanner must preserve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Requirement {
    /// Every ordered pair of vertices stays connected.
    AllPairs,
    /// Both sources keep reaching every vertex.
    TwoSource(VertexId, VertexId),
}

impl Requirement {
    pub(crate) fn sources(&self) -> Option<Vec<VertexId>> {
        match *self {
            Requirement::AllPairs => None,
            Requirement::TwoSource(a, b) => Some(vec![a, b]),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("the input graph does not satisfy the connectivity requirement")]
    RequirementNotSatisfied,
    #[error("{removable} removable edges exceed the cap of {cap}")]
    InstanceTooLarge { removable: usize, cap: usize },
    #[error("the input graph is not happy (simple and proper)")]
    NotHappy,
    #[error("the input graph is not temporally connected")]
    NotTemporallyConnected,
    #[error("source vertex {0} is out of range")]
    SourceOutOfRange(VertexId),
}

/// Result of a spanner search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpannerSolution {
    pub spanner: Spanner,
    /// The search proved that no smaller spanner exists.
    pub optimal: bool,
    /// Whether a spanner within the budget exists, when a budget was given
    /// and the search settled it.
    pub within_budget: Option<bool>,
}

impl SpannerSolution {
    pub fn size(&self) -> usize {
        self.spanner.len()
    }
}

/// Feasibility test for edge masks of one graph under one requirement.
pub(crate) struct Checker<'g> {
    engine: ReachEngine<'g>,
    sources: Option<Vec<VertexId>>,
}

impl<'g> Checker<'g> {
    pub(crate) fn new(g: &'g TemporalGraph, s: Strictness, req: Requirement) -> Result<Self, SolverError> {
        if let Requirement::TwoSource(a, b) = req {
            for x in [a, b] {
                if x >= g.vertex_count() {
                    return Err(SolverError::SourceOutOfRange(x));
                }
            }
        }
        Ok(Checker { engine: ReachEngine::new(g, s), sources: req.sources() })
    }

    pub(crate) fn ok(&mut self, active: &[bool]) -> bool {
        self.engine.all_reached(active, self.sources.as_deref())
    }

    pub(crate) fn reached_pairs(&mut self, active: &[bool]) -> usize {
        self.engine.reached_pairs(active, self.sources.as_deref())
    }
}

/// Edges whose individual removal breaks the requirement.
pub fn forced_edges(g: &TemporalGraph, s: Strictness, req: Requirement) -> Result<Vec<usize>, SolverError> {
    let mut checker = Checker::new(g, s, req)?;
    let mut active = vec![true; g.edge_count()];
    if !checker.ok(&active) {
        return Err(SolverError::RequirementNotSatisfied);
    }
    Ok(forced_within(&mut checker, &mut active))
}

/// Active edges that cannot be dropped from the active set on their own.
pub(crate) fn forced_within(checker: &mut Checker, active: &mut [bool]) -> Vec<usize> {
    let mut forced = Vec::new();
    for i in 0..active.len() {
        if !active[i] {
            continue;
        }
        active[i] = false;
        if !checker.ok(active) {
            forced.push(i);
        }
        active[i] = true;
    }
    forced
}

/// Whether the listed edges satisfy the requirement.
pub fn satisfies(g: &TemporalGraph, s: Strictness, req: Requirement, kept: &[usize]) -> bool {
    match Checker::new(g, s, req) {
        Ok(mut c) => c.ok(&crate::reach::index_mask(g.edge_count(), kept)),
        Err(_) => false,
    }
}
