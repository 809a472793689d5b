//! Time-respecting reachability: earliest arrival, reach matrices,
//! temporal connectivity and foremost out-trees.

use thiserror::Error;

use crate::tempgraph::{TemporalGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strictness {
    /// Labels along a path strictly increase.
    Strict,
    /// Labels along a path never decrease.
    NonStrict,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReachError {
    #[error("root {root} cannot reach every vertex")]
    RootNotSpanning { root: VertexId },
}

/// Earliest arrival label per vertex from one source; `None` is unreachable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrivalProfile {
    pub source: VertexId,
    pub start: u32,
    pub arrival: Vec<Option<u32>>,
}

impl ArrivalProfile {
    pub fn reaches_all(&self) -> bool {
        self.arrival.iter().all(Option::is_some)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalOutTree {
    pub root: VertexId,
    pub tree_edges: Vec<usize>,
}

struct Scan {
    arrival: Vec<Option<u32>>,
    parent: Vec<Option<usize>>,
    ops: usize,
}

/// Label-ordered sweep over the edges selected by `active`. A vertex reached
/// at label `a` may leave at `a + 1` (strict) or `a` (non-strict); the source
/// may leave at `start`.
fn scan(g: &TemporalGraph, active: impl Fn(usize) -> bool, source: VertexId, start: u32, s: Strictness) -> Scan {
    let n = g.vertex_count();
    let mut arrival = vec![None; n];
    let mut parent = vec![None; n];
    let mut ready: Vec<Option<u32>> = vec![None; n];
    arrival[source] = Some(start);
    ready[source] = Some(start);
    let step = match s {
        Strictness::Strict => 1,
        Strictness::NonStrict => 0,
    };
    let order = g.edges_by_label();
    let mut ops = 0;
    let mut lo = 0;
    while lo < order.len() {
        let t = g.edge(order[lo]).t;
        let mut hi = lo;
        while hi < order.len() && g.edge(order[hi]).t == t {
            hi += 1;
        }
        // Under strict semantics a vertex reached at t is ready only at t+1,
        // so one pass settles the group; non-strict needs a fixpoint.
        loop {
            let mut changed = false;
            for &i in &order[lo..hi] {
                ops += 1;
                if !active(i) {
                    continue;
                }
                let e = g.edge(i);
                for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                    if arrival[b].is_none() && ready[a].is_some_and(|r| r <= t) {
                        arrival[b] = Some(t);
                        parent[b] = Some(i);
                        ready[b] = Some(t + step);
                        changed = true;
                    }
                }
            }
            if s == Strictness::Strict || !changed {
                break;
            }
        }
        lo = hi;
    }
    Scan { arrival, parent, ops }
}

pub fn earliest_arrival(g: &TemporalGraph, source: VertexId, start: u32, s: Strictness) -> ArrivalProfile {
    earliest_arrival_counted(g, source, start, s).0
}

/// Same as [`earliest_arrival`], also returning the number of edge visits.
pub fn earliest_arrival_counted(
    g: &TemporalGraph,
    source: VertexId,
    start: u32,
    s: Strictness,
) -> (ArrivalProfile, usize) {
    let sc = scan(g, |_| true, source, start, s);
    (ArrivalProfile { source, start, arrival: sc.arrival }, sc.ops)
}

/// Earliest arrival using only the edges whose indices are in `kept`.
pub fn earliest_arrival_within(
    g: &TemporalGraph,
    kept: &[usize],
    source: VertexId,
    start: u32,
    s: Strictness,
) -> ArrivalProfile {
    let mask = index_mask(g.edge_count(), kept);
    let sc = scan(g, |i| mask[i], source, start, s);
    ArrivalProfile { source, start, arrival: sc.arrival }
}

/// Whether `source` reaches every vertex using only edges with `mask[i]` set.
pub(crate) fn reaches_all_masked(g: &TemporalGraph, mask: &[bool], source: VertexId, s: Strictness) -> bool {
    scan(g, |i| mask[i], source, 0, s).arrival.iter().all(Option::is_some)
}

pub(crate) fn index_mask(m: usize, kept: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; m];
    for &i in kept {
        mask[i] = true;
    }
    mask
}

pub fn reach_matrix(g: &TemporalGraph, s: Strictness) -> Vec<Vec<bool>> {
    (0..g.vertex_count()).map(|u| earliest_arrival(g, u, 0, s).arrival.iter().map(Option::is_some).collect()).collect()
}

pub fn is_tc(g: &TemporalGraph, s: Strictness) -> bool {
    let mut engine = ReachEngine::new(g, s);
    let all = vec![true; g.edge_count()];
    engine.all_reached(&all, None)
}

/// Whether every vertex is reached from each listed source.
pub fn sources_reach_all(g: &TemporalGraph, s: Strictness, sources: &[VertexId]) -> bool {
    let mut engine = ReachEngine::new(g, s);
    let all = vec![true; g.edge_count()];
    engine.all_reached(&all, Some(sources))
}

pub fn foremost_out_tree(g: &TemporalGraph, root: VertexId, s: Strictness) -> Result<TemporalOutTree, ReachError> {
    foremost_out_tree_within(g, None, root, s)
}

/// Foremost out-tree of `root`, restricted to `kept` when given.
pub fn foremost_out_tree_within(
    g: &TemporalGraph,
    kept: Option<&[usize]>,
    root: VertexId,
    s: Strictness,
) -> Result<TemporalOutTree, ReachError> {
    let sc = match kept {
        Some(k) => {
            let mask = index_mask(g.edge_count(), k);
            scan(g, |i| mask[i], root, 0, s)
        }
        None => scan(g, |_| true, root, 0, s),
    };
    if sc.arrival.iter().any(Option::is_none) {
        return Err(ReachError::RootNotSpanning { root });
    }
    let mut tree_edges: Vec<usize> = sc.parent.iter().flatten().copied().collect();
    tree_edges.sort_unstable();
    Ok(TemporalOutTree { root, tree_edges })
}

/// Whether `candidate` is a spanning tree of `n - 1` distinct pairs along
/// which `root` reaches every vertex under `s`.
pub fn verify_out_tree(g: &TemporalGraph, candidate: &[usize], root: VertexId, s: Strictness) -> bool {
    let n = g.vertex_count();
    if candidate.len() + 1 != n || candidate.iter().any(|&i| i >= g.edge_count()) {
        return false;
    }
    let mut pairs: Vec<_> = candidate.iter().map(|&i| g.edge(i).pair()).collect();
    pairs.sort_unstable();
    pairs.dedup();
    if pairs.len() != candidate.len() {
        return false;
    }
    // n-1 distinct pairs reaching every vertex from the root form a spanning tree.
    earliest_arrival_within(g, candidate, root, 0, s).reaches_all()
}

/// Bitset sweep computing, for every vertex, the set of sources that reach
/// it. Reusable across many edge subsets of one graph.
pub struct ReachEngine<'g> {
    g: &'g TemporalGraph,
    s: Strictness,
    groups: Vec<(usize, usize)>,
    words: usize,
    bits: Vec<u64>,
    pending: Vec<(usize, usize)>,
}

impl<'g> ReachEngine<'g> {
    pub fn new(g: &'g TemporalGraph, s: Strictness) -> Self {
        let order = g.edges_by_label();
        let mut groups = Vec::new();
        let mut lo = 0;
        while lo < order.len() {
            let t = g.edge(order[lo]).t;
            let mut hi = lo;
            while hi < order.len() && g.edge(order[hi]).t == t {
                hi += 1;
            }
            groups.push((lo, hi));
            lo = hi;
        }
        let words = g.vertex_count().div_ceil(64);
        ReachEngine { g, s, groups, words, bits: vec![0; words * g.vertex_count()], pending: Vec::new() }
    }

    pub fn graph(&self) -> &'g TemporalGraph {
        self.g
    }

    /// Runs the sweep over active edges with the given sources (all vertices
    /// when `None`) and reports whether every vertex is reached by all of them.
    pub fn all_reached(&mut self, active: &[bool], sources: Option<&[VertexId]>) -> bool {
        self.run(active, sources);
        let n = self.g.vertex_count();
        let w = self.words;
        let mut want = vec![0u64; w];
        match sources {
            Some(src) => src.iter().for_each(|&x| want[x / 64] |= 1 << (x % 64)),
            None => (0..n).for_each(|x| want[x / 64] |= 1 << (x % 64)),
        }
        (0..n).all(|v| (0..w).all(|k| self.bits[v * w + k] & want[k] == want[k]))
    }

    /// Number of (source, target) pairs reached; sources as in `all_reached`.
    pub fn reached_pairs(&mut self, active: &[bool], sources: Option<&[VertexId]>) -> usize {
        self.run(active, sources);
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    fn run(&mut self, active: &[bool], sources: Option<&[VertexId]>) {
        let n = self.g.vertex_count();
        let w = self.words;
        self.bits.iter_mut().for_each(|b| *b = 0);
        let mut seed = |x: usize| self.bits[x * w + x / 64] |= 1 << (x % 64);
        match sources {
            Some(src) => src.iter().for_each(|&x| seed(x)),
            None => (0..n).for_each(seed),
        }
        let order = self.g.edges_by_label();
        for gi in 0..self.groups.len() {
            let (lo, hi) = self.groups[gi];
            match self.s {
                Strictness::Strict => {
                    // Use the state from before this label for every edge.
                    self.pending.clear();
                    for &i in &order[lo..hi] {
                        if active[i] {
                            let e = self.g.edge(i);
                            self.pending.push((e.u, e.v));
                        }
                    }
                    if self.pending.is_empty() {
                        continue;
                    }
                    let mut delta = vec![0u64; self.pending.len() * 2 * w];
                    for (p, &(a, b)) in self.pending.iter().enumerate() {
                        for k in 0..w {
                            delta[(2 * p) * w + k] = self.bits[a * w + k];
                            delta[(2 * p + 1) * w + k] = self.bits[b * w + k];
                        }
                    }
                    for (p, &(a, b)) in self.pending.iter().enumerate() {
                        for k in 0..w {
                            self.bits[b * w + k] |= delta[(2 * p) * w + k];
                            self.bits[a * w + k] |= delta[(2 * p + 1) * w + k];
                        }
                    }
                }
                Strictness::NonStrict => loop {
                    let mut changed = false;
                    for &i in &order[lo..hi] {
                        if !active[i] {
                            continue;
                        }
                        let e = self.g.edge(i);
                        for k in 0..w {
                            let merged = self.bits[e.u * w + k] | self.bits[e.v * w + k];
                            if merged != self.bits[e.u * w + k] || merged != self.bits[e.v * w + k] {
                                changed = true;
                                self.bits[e.u * w + k] = merged;
                                self.bits[e.v * w + k] = merged;
                            }
                        }
                    }
                    if !changed {
                        break;
                    }
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tempgraph::TimeEdge;

    fn graph(n: usize, edges: &[(usize, usize, u32)]) -> TemporalGraph {
        TemporalGraph::build(n, edges.iter().map(|&(u, v, t)| TimeEdge::new(u, v, t)).collect()).unwrap()
    }

    #[test]
    fn chain_arrivals() {
        let g = graph(3, &[(0, 1, 2), (1, 2, 5)]);
        let p = earliest_arrival(&g, 0, 0, Strictness::Strict);
        assert_eq!(p.arrival, vec![Some(0), Some(2), Some(5)]);
    }

    #[test]
    fn strictness_boundary() {
        let g = graph(3, &[(0, 1, 3), (1, 2, 3)]);
        assert_eq!(earliest_arrival(&g, 0, 0, Strictness::Strict).arrival[2], None);
        assert_eq!(earliest_arrival(&g, 0, 0, Strictness::NonStrict).arrival[2], Some(3));
        assert!(!is_tc(&g, Strictness::Strict));
        assert!(is_tc(&g, Strictness::NonStrict));
    }

    #[test]
    fn start_time_filters_first_edge() {
        let g = graph(3, &[(0, 1, 2), (0, 2, 5)]);
        let p = earliest_arrival(&g, 0, 3, Strictness::Strict);
        assert_eq!(p.arrival, vec![Some(3), None, Some(5)]);
        let p = earliest_arrival(&g, 0, 2, Strictness::Strict);
        assert_eq!(p.arrival[1], Some(2));
    }

    #[test]
    fn small_matrices() {
        let single = graph(1, &[]);
        assert_eq!(reach_matrix(&single, Strictness::Strict), vec![vec![true]]);
        assert!(is_tc(&single, Strictness::Strict));
        let pair = graph(2, &[(0, 1, 1)]);
        assert_eq!(reach_matrix(&pair, Strictness::Strict), vec![vec![true; 2]; 2]);
        assert!(!is_tc(&graph(2, &[]), Strictness::NonStrict));
    }

    #[test]
    fn star_and_chain_trees() {
        let star = graph(4, &[(0, 1, 1), (0, 2, 2), (0, 3, 3)]);
        let t = foremost_out_tree(&star, 0, Strictness::Strict).unwrap();
        assert_eq!(t.tree_edges, vec![0, 1, 2]);
        let chain = graph(3, &[(0, 1, 1), (1, 2, 2)]);
        assert_eq!(foremost_out_tree(&chain, 0, Strictness::Strict).unwrap().tree_edges, vec![0, 1]);
        assert_eq!(foremost_out_tree(&chain, 2, Strictness::Strict), Err(ReachError::RootNotSpanning { root: 2 }));
    }

    #[test]
    fn verify_rejects_wrong_sizes_and_orders() {
        let chain = graph(3, &[(0, 1, 1), (1, 2, 2), (0, 2, 3)]);
        assert!(verify_out_tree(&chain, &[0, 1], 0, Strictness::Strict));
        assert!(!verify_out_tree(&chain, &[0], 0, Strictness::Strict));
        assert!(!verify_out_tree(&chain, &[0, 1], 2, Strictness::Strict));
        assert!(!verify_out_tree(&chain, &[0, 1, 2], 0, Strictness::Strict));
    }

    #[test]
    fn engine_matches_scan_on_sources() {
        let g = graph(4, &[(0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 0, 4)]);
        let all = vec![true; 4];
        let mut eng = ReachEngine::new(&g, Strictness::Strict);
        assert!(eng.all_reached(&all, Some(&[0])));
        assert!(!eng.all_reached(&all, Some(&[3])));
        assert!(sources_reach_all(&g, Strictness::Strict, &[0, 1]));
        assert!(!is_tc(&g, Strictness::Strict));
    }

    #[test]
    fn scan_is_linear_on_proper_graphs() {
        let edges: Vec<(usize, usize, u32)> = (0..50).map(|i| (i, i + 1, i as u32 + 1)).collect();
        let g = graph(51, &edges);
        let (_, ops) = earliest_arrival_counted(&g, 0, 0, Strictness::NonStrict);
        assert!(ops <= 2 * g.edge_count());
        let (_, ops) = earliest_arrival_counted(&g, 0, 0, Strictness::Strict);
        assert_eq!(ops, g.edge_count());
    }
}
