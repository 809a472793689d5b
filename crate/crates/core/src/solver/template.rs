//! Templates: small directed out-trees over cover vertices and placeholders
//! that fix the internal structure of a temporal out-tree.

use crate::tempgraph::{TemporalGraph, VertexId};

use super::vcover::VertexCover;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TemplateNode {
    Cover(VertexId),
    /// Stands for some non-cover vertex, chosen by a placeholder map.
    Placeholder(usize),
}

/// Node 0 is the root. `parent[i]` is the parent of node `i` (`None` only for
/// the root). Nodes are listed in breadth-first order; placeholder ids count
/// up from 0 in that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Template {
    pub nodes: Vec<TemplateNode>,
    pub parent: Vec<Option<usize>>,
}

impl Template {
    pub fn root(&self) -> VertexId {
        match self.nodes[0] {
            TemplateNode::Cover(x) => x,
            TemplateNode::Placeholder(_) => unreachable!("templates are rooted at cover vertices"),
        }
    }

    pub fn placeholder_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, TemplateNode::Placeholder(_))).count()
    }

    /// Arcs as (parent node, child node) index pairs.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.nodes.len()).filter_map(|i| self.parent[i].map(|p| (p, i))).collect()
    }

    pub fn children(&self, i: usize) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&c| self.parent[c] == Some(i)).collect()
    }

    pub fn cover_vertices(&self) -> Vec<VertexId> {
        let mut xs: Vec<VertexId> = self
            .nodes
            .iter()
            .filter_map(|n| match n {
                TemplateNode::Cover(x) => Some(*x),
                TemplateNode::Placeholder(_) => None,
            })
            .collect();
        xs.sort_unstable();
        xs
    }

    /// Whether every vertex of `x` appears in the template.
    pub fn covers(&self, x: &VertexCover) -> bool {
        self.cover_vertices() == x.members
    }

    /// Checks the defining properties: cover root; placeholders have a cover
    /// parent and only cover children; every leaf is a cover node; at most
    /// `2d` nodes; cover nodes from `x` and distinct.
    pub fn is_valid(&self, x: &VertexCover) -> bool {
        let k = self.nodes.len();
        if k == 0 || k > 2 * x.size() || self.parent.len() != k || self.parent[0].is_some() {
            return false;
        }
        if !matches!(self.nodes[0], TemplateNode::Cover(_)) {
            return false;
        }
        let covers = self.cover_vertices();
        if covers.windows(2).any(|w| w[0] == w[1]) || covers.iter().any(|&c| !x.contains(c)) {
            return false;
        }
        for i in 1..k {
            // Parents precede children, so the parent relation is a tree.
            match self.parent[i] {
                Some(p) if p < i => {}
                _ => return false,
            }
        }
        for i in 0..k {
            let children = self.children(i);
            if let TemplateNode::Placeholder(_) = self.nodes[i] {
                let parent_is_cover = matches!(self.nodes[self.parent[i].unwrap()], TemplateNode::Cover(_));
                let children_cover = children.iter().all(|&c| matches!(self.nodes[c], TemplateNode::Cover(_)));
                if children.is_empty() || !parent_is_cover || !children_cover {
                    return false;
                }
            }
        }
        true
    }
}

/// Every template over `x`: each root in `x`, each subset of the other cover
/// vertices, each rooted tree on them, and for each tree arc the choice of
/// running it directly or through a placeholder, where sibling arcs routed
/// through placeholders are grouped by every set partition.
pub fn enumerate_templates(x: &VertexCover) -> Vec<Template> {
    let mut out = Vec::new();
    let d = x.size();
    for &root in &x.members {
        let others: Vec<VertexId> = x.members.iter().copied().filter(|&v| v != root).collect();
        for mask in 0u32..(1 << others.len()) {
            let chosen: Vec<VertexId> = (0..others.len()).filter(|&i| mask >> i & 1 == 1).map(|i| others[i]).collect();
            for parents in rooted_trees(chosen.len()) {
                // parents[i] == 0 means the root, j > 0 means chosen[j - 1].
                let labels: Vec<VertexId> = std::iter::once(root).chain(chosen.iter().copied()).collect();
                let kids: Vec<Vec<usize>> = (0..labels.len())
                    .map(|p| (0..chosen.len()).filter(|&c| parents[c] == p).map(|c| c + 1).collect())
                    .collect();
                for grouping in groupings(&kids) {
                    let t = assemble(&labels, &kids, &grouping);
                    if t.nodes.len() <= 2 * d {
                        out.push(t);
                    }
                }
            }
        }
    }
    out
}

/// All parent functions on `k` non-root nodes (node ids 1..=k, root 0) that
/// form a tree rooted at 0.
fn rooted_trees(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut parents = vec![0usize; k];
    loop {
        let acyclic = (0..k).all(|c| {
            let mut cur = c + 1;
            for _ in 0..=k {
                if cur == 0 {
                    return true;
                }
                cur = parents[cur - 1];
            }
            false
        });
        if acyclic && (0..k).all(|c| parents[c] != c + 1) {
            out.push(parents.clone());
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            parents[i] += 1;
            if parents[i] <= k {
                break;
            }
            parents[i] = 0;
            i += 1;
        }
    }
}

/// For each node, a list of blocks; a block of children hangs below one
/// placeholder. Children not in any block are attached directly.
type Grouping = Vec<Vec<Vec<usize>>>;

fn groupings(kids: &[Vec<usize>]) -> Vec<Grouping> {
    let per_node: Vec<Vec<Vec<Vec<usize>>>> = kids
        .iter()
        .map(|children| {
            let mut options = Vec::new();
            for mask in 0u32..(1 << children.len()) {
                let routed: Vec<usize> =
                    (0..children.len()).filter(|&i| mask >> i & 1 == 1).map(|i| children[i]).collect();
                options.extend(set_partitions(&routed));
            }
            options
        })
        .collect();
    let mut out = vec![Vec::new()];
    for options in per_node {
        let mut next = Vec::new();
        for partial in &out {
            for opt in &options {
                let mut p: Grouping = partial.clone();
                p.push(opt.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for part in set_partitions(rest) {
        // `first` as its own block, or joined to each existing block.
        let mut alone = vec![vec![first]];
        alone.extend(part.iter().cloned());
        out.push(alone);
        for b in 0..part.len() {
            let mut joined = part.clone();
            joined[b].insert(0, first);
            out.push(joined);
        }
    }
    out
}

fn assemble(labels: &[VertexId], kids: &[Vec<usize>], grouping: &Grouping) -> Template {
    // Breadth-first layout from the root.
    let mut nodes = vec![TemplateNode::Cover(labels[0])];
    let mut parent = vec![None];
    let mut queue = vec![(0usize, 0usize)];
    let mut head = 0;
    let mut next_placeholder = 0;
    while head < queue.len() {
        let (tree_node, idx) = queue[head];
        head += 1;
        let blocks = &grouping[tree_node];
        let routed: Vec<usize> = blocks.iter().flatten().copied().collect();
        let mut entries: Vec<(VertexId, Option<&Vec<usize>>, usize)> = Vec::new();
        for &c in &kids[tree_node] {
            if !routed.contains(&c) {
                entries.push((labels[c], None, c));
            }
        }
        for b in blocks {
            let min_label = b.iter().map(|&c| labels[c]).min().unwrap();
            entries.push((min_label, Some(b), usize::MAX));
        }
        entries.sort_by_key(|(l, b, _)| (b.is_some(), *l));
        for (_, block, c) in entries {
            match block {
                None => {
                    nodes.push(TemplateNode::Cover(labels[c]));
                    parent.push(Some(idx));
                    queue.push((c, nodes.len() - 1));
                }
                Some(block) => {
                    nodes.push(TemplateNode::Placeholder(next_placeholder));
                    next_placeholder += 1;
                    parent.push(Some(idx));
                    let p_idx = nodes.len() - 1;
                    let mut members = block.clone();
                    members.sort_by_key(|&c| labels[c]);
                    for c in members {
                        nodes.push(TemplateNode::Cover(labels[c]));
                        parent.push(Some(p_idx));
                        queue.push((c, nodes.len() - 1));
                    }
                }
            }
        }
    }
    Template { nodes, parent }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instantiation {
    /// Sorted edge indices: one per template arc plus one per attached leaf.
    Edges(Vec<usize>),
    Incompatible,
}

/// Maps template arcs onto graph edges (placeholders become `zeta[id]`) and
/// hangs every `(v, x)` of `attach` below cover vertex `x`. Pairs carrying
/// several labels resolve to their first stored edge.
pub fn instantiate_template(
    g: &TemporalGraph,
    t: &Template,
    zeta: &[VertexId],
    attach: &[(VertexId, VertexId)],
    root: VertexId,
) -> Instantiation {
    if t.nodes.is_empty() || t.nodes[0] != TemplateNode::Cover(root) {
        return Instantiation::Incompatible;
    }
    let mut image = Vec::with_capacity(t.nodes.len());
    for node in &t.nodes {
        let v = match *node {
            TemplateNode::Cover(x) => x,
            TemplateNode::Placeholder(p) => match zeta.get(p) {
                Some(&v) => v,
                None => return Instantiation::Incompatible,
            },
        };
        if v >= g.vertex_count() || image.contains(&v) {
            return Instantiation::Incompatible;
        }
        image.push(v);
    }
    let covers = t.cover_vertices();
    let mut edges = Vec::new();
    for (p, c) in t.arcs() {
        match g.find_pair(image[p], image[c]) {
            Some(i) => edges.push(i),
            None => return Instantiation::Incompatible,
        }
    }
    let mut leaves = Vec::new();
    for &(v, x) in attach {
        if image.contains(&v) || leaves.contains(&v) || covers.binary_search(&x).is_err() {
            return Instantiation::Incompatible;
        }
        match g.find_pair(v, x) {
            Some(i) => edges.push(i),
            None => return Instantiation::Incompatible,
        }
        leaves.push(v);
    }
    edges.sort_unstable();
    Instantiation::Edges(edges)
}
