use std::collections::BTreeMap;

use crate::reach::{foremost_out_tree_within, is_tc, verify_out_tree, Strictness, TemporalOutTree};
use crate::tempgraph::{Spanner, TemporalGraph, VertexId};

use super::vcover::VertexCover;
use super::SolverError;

/// A spanner written as out-trees rooted in the cover plus at most one
/// extra edge per non-cover vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcTreeDecomposition {
    /// One tree per cover vertex, in cover order.
    pub trees: Vec<TemporalOutTree>,
    /// For every non-cover vertex, its extra edge if it needs one.
    pub extras: BTreeMap<VertexId, Option<usize>>,
}

impl VcTreeDecomposition {
    pub fn edge_union(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.trees.iter().flat_map(|t| t.tree_edges.iter().copied()).collect();
        all.extend(self.extras.values().flatten().copied());
        all.sort_unstable();
        all.dedup();
        all
    }
}

/// Rebuilds the tree-plus-extras structure of a spanner of a happy graph.
///
/// Every non-cover vertex `v` is grouped with the cover vertex `x` at the
/// other end of the smallest label of its foremost out-tree inside the
/// spanner. For each group the member whose edge to `x` has the largest
/// label supplies its foremost tree, which read from `x` is an out-tree of
/// `x`; every other member reaches everything by its edge to `x` followed by
/// that tree. Cover vertices without a group contribute their own foremost
/// tree. Returns `Ok(None)` when these pieces do not add up to the whole
/// spanner, which only happens for spanners that are not minimum.
pub fn vc_tree_decompose(
    g: &TemporalGraph,
    spanner: &Spanner,
    x: &VertexCover,
) -> Result<Option<VcTreeDecomposition>, SolverError> {
    if !g.classify().happy {
        return Err(SolverError::NotHappy);
    }
    let kept = spanner.kept();
    if !spanner.fits(g) || !is_tc(&g.restrict(kept), Strictness::Strict) {
        return Err(SolverError::NotTemporallyConnected);
    }
    let s = Strictness::Strict;
    let n = g.vertex_count();
    // (label, vertex, edge) of each member, per cover position.
    let mut groups: Vec<Vec<(u32, VertexId, usize)>> = vec![Vec::new(); x.size()];
    let mut own_tree: BTreeMap<VertexId, TemporalOutTree> = BTreeMap::new();
    for v in (0..n).filter(|&v| !x.contains(v)) {
        let tree = foremost_out_tree_within(g, Some(kept), v, s).map_err(|_| SolverError::NotTemporallyConnected)?;
        let Some(&first) = tree.tree_edges.iter().min_by_key(|&&e| g.edge(e).t) else {
            continue;
        };
        let other = g.edge(first).other(v);
        let Ok(pos) = x.members.binary_search(&other) else {
            // `x` is not a vertex cover of the spanner's pairs.
            return Ok(None);
        };
        groups[pos].push((g.edge(first).t, v, first));
        own_tree.insert(v, tree);
    }

    let mut trees = Vec::with_capacity(x.size());
    let mut extras = BTreeMap::new();
    for (pos, &xi) in x.members.iter().enumerate() {
        let group = &groups[pos];
        let tree_edges = match group.iter().max() {
            Some(&(_, si, _)) => own_tree[&si].tree_edges.clone(),
            None => {
                foremost_out_tree_within(g, Some(kept), xi, s)
                    .map_err(|_| SolverError::NotTemporallyConnected)?
                    .tree_edges
            }
        };
        if !verify_out_tree(g, &tree_edges, xi, s) {
            return Ok(None);
        }
        trees.push(TemporalOutTree { root: xi, tree_edges });
    }
    let in_trees: Vec<usize> = {
        let mut all: Vec<usize> = trees.iter().flat_map(|t| t.tree_edges.iter().copied()).collect();
        all.sort_unstable();
        all
    };
    for group in &groups {
        let top = group.iter().max().map(|&(_, v, _)| v);
        for &(_, v, e) in group {
            let extra = (Some(v) != top && in_trees.binary_search(&e).is_err()).then_some(e);
            extras.insert(v, extra);
        }
    }
    for v in (0..n).filter(|&v| !x.contains(v)) {
        extras.entry(v).or_insert(None);
    }
    let dec = VcTreeDecomposition { trees, extras };
    if dec.edge_union() != kept {
        return Ok(None);
    }
    Ok(Some(dec))
}
