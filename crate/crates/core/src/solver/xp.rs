//! Minimum spanners of happy graphs by guessing one temporal out-tree per
//! vertex of a minimum vertex cover, plus at most one extra edge per
//! remaining vertex.
//!
//! An out-tree rooted at a cover vertex is determined by a template, a
//! placeholder map (together: the tree's skeleton) and the cover vertex each
//! remaining vertex hangs from. Skeletons are enumerated per root with early
//! pruning. Because non-cover vertices are pairwise non-adjacent, the leaf
//! edges chosen for a vertex `v` across all trees only ever touch `v`; the
//! search therefore branches, per vertex, over the set of its edges used as
//! leaf attachments, which covers every combination of leaf placements.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::reach::{is_tc, reaches_all_masked, Strictness};
use crate::tempgraph::{Spanner, TemporalGraph, VertexId};

use super::exact::greedy_minimal;
use super::template::{enumerate_templates, Template, TemplateNode};
use super::vcover::{min_vertex_cover, VertexCover};
use super::{Checker, Requirement, SolverError, SpannerSolution};

#[derive(Clone, Debug, Default)]
pub struct XpConfig {
    /// Prune with the size of a greedy minimal spanner. The returned spanner
    /// always comes from the enumeration; this only skips hopeless branches.
    pub greedy_bound: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct XpStats {
    pub cover: Vec<VertexId>,
    pub templates: usize,
    pub skeletons_per_root: Vec<usize>,
    pub unions_evaluated: usize,
}

/// A vertex of `V \ X` that no single incident edge can repair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infeasible {
    pub vertex: VertexId,
}

pub fn min_spanner_xp_vc(g: &TemporalGraph, budget: Option<usize>) -> Result<SpannerSolution, SolverError> {
    min_spanner_xp_vc_with(g, budget, &XpConfig { greedy_bound: true }).map(|(sol, _)| sol)
}

pub fn min_spanner_xp_vc_with(
    g: &TemporalGraph,
    budget: Option<usize>,
    cfg: &XpConfig,
) -> Result<(SpannerSolution, XpStats), SolverError> {
    if !g.classify().happy {
        return Err(SolverError::NotHappy);
    }
    if !is_tc(g, Strictness::Strict) {
        return Err(SolverError::NotTemporallyConnected);
    }
    let n = g.vertex_count();
    let m = g.edge_count();
    let cover = min_vertex_cover(&g.underlying_graph(), n);
    let mut stats = XpStats { cover: cover.members.clone(), ..Default::default() };
    if n == 1 {
        let sol = SpannerSolution { spanner: Spanner::new(vec![]), optimal: true, within_budget: budget.map(|_| true) };
        return Ok((sol, stats));
    }

    let ctx = Context::new(g, &cover);
    let templates: Vec<Template> = enumerate_templates(&cover).into_iter().filter(|t| t.covers(&cover)).collect();
    stats.templates = templates.len();
    let skeletons: Vec<Vec<Skeleton>> = cover
        .members
        .par_iter()
        .map(|&root| {
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for t in templates.iter().filter(|t| t.root() == root) {
                for sk in ctx.skeletons(t) {
                    if seen.insert((sk.edges.clone(), sk.attach.clone())) {
                        out.push(sk);
                    }
                }
            }
            out
        })
        .collect();
    stats.skeletons_per_root = skeletons.iter().map(Vec::len).collect();

    let bound = if cfg.greedy_bound {
        let mut checker = Checker::new(g, Strictness::Strict, Requirement::AllPairs)?;
        let order: Vec<usize> = (0..m).rev().collect();
        greedy_minimal(&mut checker, m, &order).len() + 1
    } else {
        m + 1
    };
    let mut search = Search {
        ctx: &ctx,
        skeletons: &skeletons,
        best_size: bound,
        best: None,
        budget,
        stop: false,
        evaluated: 0,
        union: vec![0; m],
        picked: Vec::new(),
        seen: HashSet::new(),
    };
    search.roots(0);
    stats.unions_evaluated = search.evaluated;
    let stopped = search.stop;
    let best = search.best.expect("a temporally connected happy graph contains a lemma-shaped spanner");
    let size = best.len();
    let sol =
        SpannerSolution { spanner: Spanner::new(best), optimal: !stopped, within_budget: budget.map(|k| size <= k) };
    Ok((sol, stats))
}

/// For each non-cover vertex, the smallest-index incident edge that lets it
/// reach every vertex inside `tree_union` plus that edge, or `None` if it
/// already does so inside `tree_union`.
pub fn select_extra_edges(
    g: &TemporalGraph,
    tree_union: &[usize],
    x: &VertexCover,
) -> Result<BTreeMap<VertexId, Option<usize>>, Infeasible> {
    let mut mask = crate::reach::index_mask(g.edge_count(), tree_union);
    let mut out = BTreeMap::new();
    for v in (0..g.vertex_count()).filter(|&v| !x.contains(v)) {
        out.insert(v, extra_for(g, &mut mask, v).map_err(|_| Infeasible { vertex: v })?);
    }
    Ok(out)
}

fn extra_for(g: &TemporalGraph, mask: &mut [bool], v: VertexId) -> Result<Option<usize>, ()> {
    if reaches_all_masked(g, mask, v, Strictness::Strict) {
        return Ok(None);
    }
    for e in g.incident(v) {
        if mask[e] {
            continue;
        }
        mask[e] = true;
        let ok = reaches_all_masked(g, mask, v, Strictness::Strict);
        mask[e] = false;
        if ok {
            return Ok(Some(e));
        }
    }
    Err(())
}

struct Context<'g> {
    g: &'g TemporalGraph,
    non_cover: Vec<VertexId>,
    /// Incident edges of each non-cover vertex (at most `d`, all to the cover).
    local: Vec<Vec<usize>>,
}

/// One template instantiated with a placeholder map, with the legal leaf
/// edges for every vertex it leaves out.
struct Skeleton {
    edges: Vec<usize>,
    /// Per non-cover slot: bitmask over its local edges usable as leaf edge,
    /// or `None` when the vertex is inside the skeleton.
    attach: Vec<Option<u32>>,
}

impl<'g> Context<'g> {
    fn new(g: &'g TemporalGraph, cover: &VertexCover) -> Self {
        let non_cover: Vec<VertexId> = (0..g.vertex_count()).filter(|&v| !cover.contains(v)).collect();
        let local = non_cover.iter().map(|&v| g.incident(v)).collect();
        Context { g, non_cover, local }
    }

    /// All realizable placeholder maps for `t`: arcs must exist and labels
    /// must increase away from the root.
    fn skeletons(&self, t: &Template) -> Vec<Skeleton> {
        let k = t.nodes.len();
        let mut image = vec![usize::MAX; k];
        let mut arrival = vec![0u32; k];
        let mut edges = vec![usize::MAX; k];
        let mut used = vec![false; self.g.vertex_count()];
        let mut out = Vec::new();
        self.place(t, 0, &mut image, &mut arrival, &mut edges, &mut used, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn place(
        &self,
        t: &Template,
        i: usize,
        image: &mut Vec<usize>,
        arrival: &mut Vec<u32>,
        edges: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Skeleton>,
    ) {
        if i == t.nodes.len() {
            if let Some(sk) = self.finish(image, arrival, edges) {
                out.push(sk);
            }
            return;
        }
        let candidates: Vec<VertexId> = match t.nodes[i] {
            TemplateNode::Cover(x) => vec![x],
            TemplateNode::Placeholder(_) => self.non_cover.iter().copied().filter(|&v| !used[v]).collect(),
        };
        for v in candidates {
            image[i] = v;
            match t.parent[i] {
                None => arrival[i] = 0,
                Some(p) => {
                    let Some(e) = self.g.find_pair(image[p], v) else { continue };
                    let label = self.g.edge(e).t;
                    if label <= arrival[p] {
                        continue;
                    }
                    arrival[i] = label;
                    edges[i] = e;
                }
            }
            used[v] = true;
            self.place(t, i + 1, image, arrival, edges, used, out);
            used[v] = false;
        }
    }

    fn finish(&self, image: &[usize], arrival: &[u32], edges: &[usize]) -> Option<Skeleton> {
        let mut at = vec![None; self.g.vertex_count()];
        for (i, &v) in image.iter().enumerate() {
            at[v] = Some(arrival[i]);
        }
        let mut attach = vec![None; self.non_cover.len()];
        for (k, &v) in self.non_cover.iter().enumerate() {
            if at[v].is_some() {
                continue;
            }
            let mut mask = 0u32;
            for (b, &e) in self.local[k].iter().enumerate() {
                let edge = self.g.edge(e);
                let a = edge.other(v);
                if at[a].is_some_and(|arr| edge.t > arr) {
                    mask |= 1 << b;
                }
            }
            if mask == 0 {
                return None;
            }
            attach[k] = Some(mask);
        }
        let mut tree_edges: Vec<usize> = edges[1..].to_vec();
        tree_edges.sort_unstable();
        Some(Skeleton { edges: tree_edges, attach })
    }
}

struct Search<'a, 'g> {
    ctx: &'a Context<'g>,
    skeletons: &'a [Vec<Skeleton>],
    best_size: usize,
    best: Option<Vec<usize>>,
    budget: Option<usize>,
    stop: bool,
    evaluated: usize,
    /// Multiplicity of each edge in the current union.
    union: Vec<u32>,
    /// Chosen skeleton index per root so far.
    picked: Vec<usize>,
    /// Unions already evaluated; the outcome depends only on the union.
    seen: HashSet<Vec<bool>>,
}

impl Search<'_, '_> {
    fn union_size(&self) -> usize {
        self.union.iter().filter(|&&c| c > 0).count()
    }

    /// Every non-cover vertex needs at least one incident edge.
    fn bare_vertices(&self) -> usize {
        self.ctx.local.iter().filter(|es| es.iter().all(|&e| self.union[e] == 0)).count()
    }

    fn roots(&mut self, r: usize) {
        if self.stop {
            return;
        }
        if self.union_size() + self.bare_vertices() >= self.best_size {
            return;
        }
        if r == self.skeletons.len() {
            self.leaves();
            return;
        }
        for idx in 0..self.skeletons[r].len() {
            let edges = self.skeletons[r][idx].edges.clone();
            edges.iter().for_each(|&e| self.union[e] += 1);
            self.picked.push(idx);
            self.roots(r + 1);
            self.picked.pop();
            edges.iter().for_each(|&e| self.union[e] -= 1);
            if self.stop {
                return;
            }
        }
    }

    /// With every skeleton fixed, chooses per non-cover vertex which of its
    /// edges serve as leaf edges.
    fn leaves(&mut self) {
        let ctx = self.ctx;
        let mut options: Vec<Vec<u32>> = Vec::with_capacity(ctx.non_cover.len());
        for k in 0..ctx.non_cover.len() {
            let required: Vec<u32> =
                self.picked.iter().enumerate().filter_map(|(r, &idx)| self.skeletons[r][idx].attach[k]).collect();
            let opts = leaf_sets(&required, ctx.local[k].len());
            if opts.is_empty() {
                return;
            }
            options.push(opts);
        }
        // Reach is monotone in the edge set, so a vertex that cannot reach
        // everything even when all other vertices use every option edge will
        // need an extra edge.
        let mut widest: Vec<bool> = self.union.iter().map(|&c| c > 0).collect();
        for (k, opts) in options.iter().enumerate() {
            let all = opts.iter().fold(0, |a, &f| a | f);
            for b in 0..ctx.local[k].len() {
                if all >> b & 1 == 1 {
                    widest[ctx.local[k][b]] = true;
                }
            }
        }
        let mut costs: Vec<Vec<(usize, u32)>> = Vec::with_capacity(options.len());
        for (k, opts) in options.iter().enumerate() {
            let present = self.present_mask(k);
            let v = ctx.non_cover[k];
            let mut scored = Vec::with_capacity(opts.len());
            for &f in opts {
                let mut mask = widest.clone();
                for b in 0..ctx.local[k].len() {
                    let e = ctx.local[k][b];
                    mask[e] = (f | present) >> b & 1 == 1;
                }
                let needy = !reaches_all_masked(ctx.g, &mask, v, Strictness::Strict);
                scored.push(((f & !present).count_ones() as usize + needy as usize, f));
            }
            scored.sort_unstable();
            costs.push(scored);
        }
        let lower: usize = costs.iter().map(|c| c[0].0).sum();
        if self.union_size() + lower >= self.best_size {
            return;
        }
        let mut suffix = vec![0usize; costs.len() + 1];
        for k in (0..costs.len()).rev() {
            suffix[k] = suffix[k + 1] + costs[k][0].0;
        }
        self.choose(0, &costs, &suffix, 0);
    }

    fn present_mask(&self, k: usize) -> u32 {
        self.ctx.local[k].iter().enumerate().filter(|(_, &e)| self.union[e] > 0).fold(0, |m, (b, _)| m | 1 << b)
    }

    /// `spent` is the needy part of the bound paid by vertices before `k`.
    fn choose(&mut self, k: usize, costs: &[Vec<(usize, u32)>], suffix: &[usize], spent: usize) {
        if self.stop {
            return;
        }
        if k == costs.len() {
            self.evaluate();
            return;
        }
        for &(cost, f) in &costs[k] {
            let present = self.present_mask(k);
            let needy = cost - (f & !present).count_ones() as usize;
            let added: Vec<usize> =
                (0..self.ctx.local[k].len()).filter(|b| f >> b & 1 == 1).map(|b| self.ctx.local[k][b]).collect();
            added.iter().for_each(|&e| self.union[e] += 1);
            if self.union_size() + spent + needy + suffix[k + 1] < self.best_size {
                self.choose(k + 1, costs, suffix, spent + needy);
            }
            added.iter().for_each(|&e| self.union[e] -= 1);
            if self.stop {
                return;
            }
        }
    }

    fn evaluate(&mut self) {
        let g = self.ctx.g;
        let mut mask: Vec<bool> = self.union.iter().map(|&c| c > 0).collect();
        if !self.seen.insert(mask.clone()) {
            return;
        }
        self.evaluated += 1;
        let mut size = self.union_size();
        let mut extras = Vec::new();
        for &v in &self.ctx.non_cover {
            if size >= self.best_size {
                return;
            }
            match extra_for(g, &mut mask, v) {
                Ok(None) => {}
                Ok(Some(e)) => {
                    extras.push(e);
                    size += 1;
                }
                Err(()) => return,
            }
        }
        if size >= self.best_size {
            return;
        }
        extras.iter().for_each(|&e| mask[e] = true);
        let kept: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
        if !is_tc(&g.restrict(&kept), Strictness::Strict) {
            return;
        }
        self.best_size = kept.len();
        self.best = Some(kept);
        if self.budget.is_some_and(|b| self.best_size <= b) {
            self.stop = true;
        }
    }
}

/// Subsets `f` of a vertex's local edges usable as its set of leaf edges:
/// every tree that leaves the vertex out picks one edge of `f` from its own
/// legal set, and every edge of `f` is picked by some tree.
fn leaf_sets(required: &[u32], width: usize) -> Vec<u32> {
    if required.is_empty() {
        return vec![0];
    }
    let mut out = Vec::new();
    for f in 1u32..(1 << width) {
        if (f.count_ones() as usize) <= required.len() && covers_exactly(required, f) {
            out.push(f);
        }
    }
    out
}

/// Whether each requirement can pick one bit of `f` inside its own mask so
/// that all bits of `f` get picked.
fn covers_exactly(required: &[u32], f: u32) -> bool {
    fn go(required: &[u32], f: u32, picked: u32) -> bool {
        match required.split_first() {
            None => picked == f,
            Some((&r, rest)) => {
                let mut avail = r & f;
                while avail != 0 {
                    let bit = avail & avail.wrapping_neg();
                    if go(rest, f, picked | bit) {
                        return true;
                    }
                    avail &= avail - 1;
                }
                false
            }
        }
    }
    go(required, f, 0)
}
