use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::tempgraph::{Spanner, TemporalGraph, TimeEdge, VertexId};

use super::ReductionError;

/// A vertex of the clique instance: (color, index within the color).
pub type ColoredVertex = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MccInstance {
    /// Number of colors `k`.
    pub colors: usize,
    /// Vertices per color `n`.
    pub class_size: usize,
    /// Each edge with its lower color first, in input order.
    pub edges: Vec<(ColoredVertex, ColoredVertex)>,
}

impl MccInstance {
    pub fn new(
        colors: usize,
        class_size: usize,
        edges: Vec<(ColoredVertex, ColoredVertex)>,
    ) -> Result<Self, ReductionError> {
        if colors < 2 || class_size == 0 {
            return Err(ReductionError::InvariantViolated("need at least two colors and one vertex per color".into()));
        }
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for (index, &(a, b)) in edges.iter().enumerate() {
            let bad = |reason: &str| ReductionError::BadEdge { index, reason: reason.into() };
            if a.0 >= colors || b.0 >= colors || a.1 >= class_size || b.1 >= class_size {
                return Err(bad("vertex out of range"));
            }
            if a.0 == b.0 {
                return Err(bad("both endpoints have the same color"));
            }
            let e = if a.0 < b.0 { (a, b) } else { (b, a) };
            if !seen.insert(e) {
                return Err(bad("repeated edge"));
            }
            normalized.push(e);
        }
        let inst = MccInstance { colors, class_size, edges: normalized };
        for i in 0..colors {
            for j in i + 1..colors {
                let count = inst.pair_edges(i, j).len();
                if count == 0 || count % 2 == 1 {
                    return Err(ReductionError::OddEdgeCount { i, j, count });
                }
            }
        }
        for color in 0..colors {
            let universal = (0..class_size).any(|a| {
                (0..colors).filter(|&c| c != color).all(|c| {
                    inst.edges.iter().any(|&(p, q)| (p == (color, a) && q.0 == c) || (q == (color, a) && p.0 == c))
                })
            });
            if !universal {
                return Err(ReductionError::NoUniversalVertex { color });
            }
        }
        Ok(inst)
    }

    /// The complete `k`-partite graph with `n` vertices per color.
    pub fn complete(colors: usize, class_size: usize) -> Result<Self, ReductionError> {
        let mut edges = Vec::new();
        for i in 0..colors {
            for j in i + 1..colors {
                for a in 0..class_size {
                    for b in 0..class_size {
                        edges.push(((i, a), (j, b)));
                    }
                }
            }
        }
        MccInstance::new(colors, class_size, edges)
    }

    /// Text format: `k n`, then one `i a j b` line per edge (all 0-based).
    /// Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, ReductionError> {
        let mut header = None;
        let mut edges = Vec::new();
        let mut last = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last = line;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let nums: Vec<usize> =
                trimmed.split_whitespace().map(|t| t.parse()).collect::<Result<_, _>>().map_err(|_| {
                    ReductionError::Parse { line, message: format!("expected non-negative integers, got {trimmed:?}") }
                })?;
            match (header, nums.as_slice()) {
                (None, &[k, n]) => header = Some((k, n)),
                (Some(_), &[i, a, j, b]) => edges.push(((i, a), (j, b))),
                (None, _) => return Err(ReductionError::Parse { line, message: "expected header `k n`".into() }),
                (Some(_), _) => return Err(ReductionError::Parse { line, message: "expected edge `i a j b`".into() }),
            }
        }
        let (k, n) = header.ok_or(ReductionError::Parse { line: last, message: "missing header".into() })?;
        MccInstance::new(k, n, edges)
    }

    /// Edges between colors `i < j` in their fixed order.
    pub fn pair_edges(&self, i: usize, j: usize) -> Vec<(ColoredVertex, ColoredVertex)> {
        self.edges.iter().copied().filter(|&(a, b)| a.0 == i && b.0 == j).collect()
    }

    /// Largest edge count over all color pairs.
    pub fn max_pair_edges(&self) -> usize {
        self.color_pairs().map(|(i, j)| self.pair_edges(i, j).len()).max().unwrap_or(0)
    }

    fn color_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.colors).flat_map(move |i| (i + 1..self.colors).map(move |j| (i, j)))
    }

    /// 1-based global position of a vertex, colors in order.
    pub fn global_index(&self, v: ColoredVertex) -> usize {
        v.0 * self.class_size + v.1 + 1
    }
}

/// Position on a selection cycle; `ℓ` counts edges of the color pair from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SelectionRole {
    /// Endpoint of edge `ℓ` in the lower color.
    Low(usize),
    /// Endpoint of edge `ℓ` in the higher color.
    High(usize),
    /// The vertex between edge `ℓ` and edge `ℓ + 1`.
    Between(usize),
}

/// One selection cycle on its own, vertices numbered along the cycle
/// starting with the lower-color endpoint of edge 1.
#[derive(Clone, Debug)]
pub struct GadgetFragment {
    pub colors: (usize, usize),
    pub pair_edges: usize,
    pub graph: TemporalGraph,
    pub roles: Vec<SelectionRole>,
    /// Labels carried by every cycle edge, ascending.
    pub labels: Vec<u32>,
    /// Smallest high label.
    pub high_base: u32,
}

impl GadgetFragment {
    pub fn cycle_len(&self) -> usize {
        3 * self.pair_edges
    }

    /// Edge index of cycle edge `pos` (between cycle vertices `pos` and
    /// `pos + 1`) at label `t`.
    pub fn time_edge(&self, pos: usize, t: u32) -> Option<usize> {
        let q = self.labels.binary_search(&t).ok()?;
        (pos < self.cycle_len()).then(|| pos * self.labels.len() + q)
    }

    /// Largest low label.
    pub fn low_top(&self) -> u32 {
        (3 * self.pair_edges / 2 + 4) as u32
    }
}

/// The cycle for color pair `(i, j)` with `pair_edges` edges. Every cycle
/// edge carries the low labels `5..=3e/2+4` and the high labels
/// `3m/2+4kn+5..=3m/2+4kn+3e/2+4`, where `e = pair_edges`.
pub fn edge_selection_gadget(
    i: usize,
    j: usize,
    pair_edges: usize,
    m: usize,
    k: usize,
    n: usize,
) -> Result<GadgetFragment, ReductionError> {
    if pair_edges == 0 || pair_edges % 2 == 1 {
        return Err(ReductionError::OddEdgeCount { i, j, count: pair_edges });
    }
    if m % 2 == 1 || m < pair_edges {
        return Err(ReductionError::InvariantViolated(format!("m = {m} must be even and at least {pair_edges}")));
    }
    let half = 3 * pair_edges / 2;
    let high_base = (3 * m / 2 + 4 * k * n + 5) as u32;
    let mut labels: Vec<u32> = (5..=half as u32 + 4).collect();
    labels.extend(high_base..high_base + half as u32);
    let len = 3 * pair_edges;
    let mut roles = Vec::with_capacity(len);
    for l in 1..=pair_edges {
        roles.extend([SelectionRole::Low(l), SelectionRole::High(l), SelectionRole::Between(l)]);
    }
    let mut edges = Vec::with_capacity(len * labels.len());
    for pos in 0..len {
        for &t in &labels {
            edges.push(TimeEdge::new(pos, (pos + 1) % len, t));
        }
    }
    let graph = TemporalGraph::build(len, edges)?;
    Ok(GadgetFragment { colors: (i, j), pair_edges, graph, roles, labels, high_base })
}

/// The spanner of `6e - 3` time edges anchored at selection edge `l`
/// (1-based): the anchor at the smallest high label, and along both arcs
/// leaving it the `q`-th edge at high label `c + q` and low label
/// `3e/2 - q + 4`. The cycle edge opposite the anchor is unused.
pub fn gadget_witness_spanner(frag: &GadgetFragment, l: usize) -> Result<Spanner, ReductionError> {
    let e = frag.pair_edges;
    if l == 0 || l > e {
        return Err(ReductionError::NotASelectionEdge { index: l, count: e });
    }
    let len = frag.cycle_len();
    let anchor = 3 * (l - 1);
    let c = frag.high_base;
    let mut kept = vec![frag.time_edge(anchor, c).unwrap()];
    let arc = 3 * e / 2 - 1;
    for q in 1..=arc {
        let forward = (anchor + q) % len;
        let backward = (anchor + len - q) % len;
        for pos in [forward, backward] {
            kept.push(frag.time_edge(pos, c + q as u32).unwrap());
            kept.push(frag.time_edge(pos, (3 * e / 2 - q + 4) as u32).unwrap());
        }
    }
    Ok(Spanner::new(kept))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MccRole {
    Selection {
        i: usize,
        j: usize,
        at: SelectionRole,
    },
    /// Central validator vertex for color `i` leading from the gadget of
    /// `(i, from)` to the gadget of `(i, to)`.
    ValidatorCenter {
        i: usize,
        from: usize,
        to: usize,
    },
    /// Side vertex `side` (1 or 2) of the validator path through global
    /// vertex `h`, for selection edges `l` of `(i, from)` and `l2` of
    /// `(i, to)`.
    ValidatorSide {
        i: usize,
        from: usize,
        to: usize,
        h: usize,
        side: u8,
        l: usize,
        l2: usize,
    },
    /// Hub entered early from the first gadget and left late into the second.
    Hub {
        early: (usize, usize),
        late: (usize, usize),
    },
    Y(u8),
}

impl fmt::Display for MccRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MccRole::Selection { i, j, at } => match at {
                SelectionRole::Low(l) => write!(f, "sel({i},{j}) v{l},{i}"),
                SelectionRole::High(l) => write!(f, "sel({i},{j}) v{l},{j}"),
                SelectionRole::Between(l) => write!(f, "sel({i},{j}) u{l}"),
            },
            MccRole::ValidatorCenter { i, from, to } => write!(f, "w({from},{to})_{i}"),
            MccRole::ValidatorSide { i, from, to, h, side, l, l2 } => {
                write!(f, "w({from},{to})_{i},{h},{side} edges {l},{l2}")
            }
            MccRole::Hub { early, late } => write!(f, "hub ({},{})->({},{})", early.0, early.1, late.0, late.1),
            MccRole::Y(t) => write!(f, "y{t}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetTag {
    Selection { i: usize, j: usize },
    Validator { i: usize, j: usize, j2: usize },
    Connector,
}

impl fmt::Display for GadgetTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GadgetTag::Selection { i, j } => write!(f, "selection({i},{j})"),
            GadgetTag::Validator { i, j, j2 } => write!(f, "validator({i},{j},{j2})"),
            GadgetTag::Connector => write!(f, "connector"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MccReductionOutput {
    pub instance: MccInstance,
    pub graph: TemporalGraph,
    pub budget: usize,
    /// Number of connector time edges.
    pub x: usize,
    /// Gadget of every edge, by edge index.
    pub gadget_map: Vec<GadgetTag>,
    /// Sorted feedback vertex set of the underlying graph.
    pub fvs: Vec<VertexId>,
    pub roles: Vec<MccRole>,
    gadgets: BTreeMap<(usize, usize), PlacedGadget>,
    /// Keyed by `(i, j, j2, l, l2)` with `j < j2`.
    validators: BTreeMap<(usize, usize, usize, usize, usize), [usize; 8]>,
}

#[derive(Clone, Debug)]
struct PlacedGadget {
    fragment: GadgetFragment,
    vertex_offset: usize,
    edge_offset: usize,
}

impl MccReductionOutput {
    pub fn connector_edges(&self) -> Vec<usize> {
        (0..self.gadget_map.len()).filter(|&e| self.gadget_map[e] == GadgetTag::Connector).collect()
    }

    pub fn gadget(&self, i: usize, j: usize) -> Option<&GadgetFragment> {
        self.gadgets.get(&(i, j)).map(|p| &p.fragment)
    }

    /// Vertices of the gadget for colors `i < j` in the full graph.
    pub fn gadget_vertices(&self, i: usize, j: usize) -> Option<Vec<VertexId>> {
        let p = self.gadgets.get(&(i, j))?;
        Some((p.vertex_offset..p.vertex_offset + p.fragment.cycle_len()).collect())
    }

    pub fn roles_text(&self) -> String {
        self.roles.iter().enumerate().map(|(v, r)| format!("{v} {r}\n")).collect()
    }

    pub fn gadgets_text(&self) -> String {
        self.gadget_map.iter().enumerate().map(|(e, t)| format!("{e} {t}\n")).collect()
    }
}

fn choose2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// The color-`c` end of an edge.
fn endpoint(edge: (ColoredVertex, ColoredVertex), c: usize) -> ColoredVertex {
    if edge.0 .0 == c {
        edge.0
    } else {
        edge.1
    }
}

pub fn mcc_to_spanner_instance(inst: &MccInstance) -> Result<MccReductionOutput, ReductionError> {
    // Re-validate: the fields are public.
    let inst = MccInstance::new(inst.colors, inst.class_size, inst.edges.clone())?;
    let (k, n) = (inst.colors, inst.class_size);
    let m = inst.max_pair_edges();
    let half_m = (3 * m / 2) as u32;
    let kn = (k * n) as u32;
    let (m3, n32) = (3 * m as u32, n as u32);

    let mut roles: Vec<MccRole> = Vec::new();
    let mut edges: Vec<TimeEdge> = Vec::new();
    let mut gadget_map: Vec<GadgetTag> = Vec::new();
    let mut gadgets = BTreeMap::new();
    let mut fvs = Vec::new();

    for (i, j) in inst.color_pairs().collect::<Vec<_>>() {
        let fragment = edge_selection_gadget(i, j, inst.pair_edges(i, j).len(), m, k, n)?;
        let vertex_offset = roles.len();
        let edge_offset = edges.len();
        roles.extend(fragment.roles.iter().map(|&at| MccRole::Selection { i, j, at }));
        for e in fragment.graph.edges() {
            edges.push(TimeEdge::new(e.u + vertex_offset, e.v + vertex_offset, e.t));
            gadget_map.push(GadgetTag::Selection { i, j });
        }
        fvs.push(vertex_offset);
        gadgets.insert((i, j), PlacedGadget { fragment, vertex_offset, edge_offset });
    }
    // Vertex of the full graph at the color-`c` end of edge `l` in gadget (i, j).
    let end_vertex = |i: usize, j: usize, l: usize, c: usize| {
        let p = &gadgets[&(i.min(j), i.max(j))];
        p.vertex_offset + 3 * (l - 1) + usize::from(c != i.min(j))
    };

    let mut validators = BTreeMap::new();
    let mut connector_members = Vec::new();
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            for j2 in (j + 1..k).filter(|&j2| j2 != i) {
                let center = roles.len();
                roles.push(MccRole::ValidatorCenter { i, from: j, to: j2 });
                let center_back = roles.len();
                roles.push(MccRole::ValidatorCenter { i, from: j2, to: j });
                fvs.extend([center, center_back]);
                connector_members.extend([center, center_back]);
                let first = inst.pair_edges(i.min(j), i.max(j));
                let second = inst.pair_edges(i.min(j2), i.max(j2));
                for (l, &e1) in first.iter().enumerate() {
                    for (l2, &e2) in second.iter().enumerate() {
                        let shared = endpoint(e1, i);
                        if shared != endpoint(e2, i) {
                            continue;
                        }
                        let (l, l2) = (l + 1, l2 + 1);
                        let h = inst.global_index(shared) as u32;
                        let p = end_vertex(i, j, l, i);
                        let q = end_vertex(i, j2, l2, i);
                        let side = |roles: &mut Vec<MccRole>, from, to, s| {
                            roles.push(MccRole::ValidatorSide { i, from, to, h: h as usize, side: s, l, l2 });
                            roles.len() - 1
                        };
                        let a1 = side(&mut roles, j, j2, 1);
                        let a2 = side(&mut roles, j, j2, 2);
                        let b1 = side(&mut roles, j2, j, 1);
                        let b2 = side(&mut roles, j2, j, 2);
                        connector_members.extend([a1, a2, b1, b2]);
                        let early = half_m + 2 * h + 4;
                        let late = half_m + 2 * n32 + 2 * h + 4;
                        let path = [
                            TimeEdge::new(p, a1, early),
                            TimeEdge::new(a1, center, early + 1),
                            TimeEdge::new(center, a2, late),
                            TimeEdge::new(a2, q, late + 1),
                            TimeEdge::new(q, b1, early),
                            TimeEdge::new(b1, center_back, early + 1),
                            TimeEdge::new(center_back, b2, late),
                            TimeEdge::new(b2, p, late + 1),
                        ];
                        let mut ids = [0; 8];
                        for (slot, te) in path.into_iter().enumerate() {
                            ids[slot] = edges.len();
                            edges.push(te);
                            gadget_map.push(GadgetTag::Validator { i, j, j2 });
                        }
                        validators.insert((i, j, j2, l, l2), ids);
                    }
                }
            }
        }
    }

    let connector_start = edges.len();
    let pairs: Vec<(usize, usize)> = inst.color_pairs().collect();
    let hub_late = half_m + 4 * kn + 6;
    let mut hubs = Vec::new();
    for &a in &pairs {
        for &b in &pairs {
            let distinct: BTreeSet<usize> = [a.0, a.1, b.0, b.1].into();
            if distinct.len() < 4 {
                continue;
            }
            let hub = roles.len();
            roles.push(MccRole::Hub { early: a, late: b });
            hubs.push(hub);
            for (gadget, t) in [(a, 4), (b, hub_late)] {
                let p = &gadgets[&gadget];
                for v in p.vertex_offset..p.vertex_offset + p.fragment.cycle_len() {
                    edges.push(TimeEdge::new(v, hub, t));
                }
            }
        }
    }
    let y: Vec<VertexId> = (1..=4)
        .map(|t| {
            roles.push(MccRole::Y(t));
            roles.len() - 1
        })
        .collect();
    let top = m3 + 4 * kn;
    let mut members: Vec<VertexId> = hubs.iter().chain(connector_members.iter()).copied().collect();
    members.sort_unstable();
    for &v in &members {
        edges.push(TimeEdge::new(v, y[0], 1));
        edges.push(TimeEdge::new(v, y[1], 3));
        edges.push(TimeEdge::new(v, y[2], top + 7));
        edges.push(TimeEdge::new(v, y[3], top + 9));
    }
    edges.push(TimeEdge::new(y[0], y[1], 2));
    edges.push(TimeEdge::new(y[2], y[3], top + 8));
    edges.push(TimeEdge::new(y[0], y[3], 1));
    edges.push(TimeEdge::new(y[0], y[3], top + 9));
    edges.push(TimeEdge::new(y[0], y[2], 1));
    edges.push(TimeEdge::new(y[1], y[3], top + 9));
    let x = edges.len() - connector_start;
    gadget_map.resize(edges.len(), GadgetTag::Connector);
    fvs.extend(hubs.iter().copied());
    fvs.extend(y.iter().copied());
    fvs.sort_unstable();

    let graph = TemporalGraph::build(roles.len(), edges)?;
    let budget = 6 * inst.edges.len() - 2 * choose2(k) + 8 * k * choose2(k - 1) + x;
    Ok(MccReductionOutput { instance: inst, graph, budget, x, gadget_map, fvs, roles, gadgets, validators })
}

/// The spanner of exactly `budget` time edges read off a multicolored
/// clique, given as the chosen index within each color: all connector
/// edges, per gadget the anchored cycle spanner at the clique edge plus
/// that edge at the top low label, and per shared-color gadget pair the
/// eight validator edges through the clique vertex.
pub fn mcc_witness_spanner(out: &MccReductionOutput, clique: &[usize]) -> Result<Spanner, ReductionError> {
    let inst = &out.instance;
    if clique.len() != inst.colors || clique.iter().any(|&a| a >= inst.class_size) {
        return Err(ReductionError::InvariantViolated(format!(
            "expected one index below {} for each of {} colors",
            inst.class_size, inst.colors
        )));
    }
    // Local index of the clique edge in each gadget.
    let mut chosen = BTreeMap::new();
    for &(i, j) in out.gadgets.keys() {
        let pair = inst.pair_edges(i, j);
        let l = pair
            .iter()
            .position(|&e| e == ((i, clique[i]), (j, clique[j])))
            .ok_or(ReductionError::NotAClique { i, j })?
            + 1;
        chosen.insert((i, j), l);
    }
    let mut kept = out.connector_edges();
    for (&(i, j), p) in &out.gadgets {
        let l = chosen[&(i, j)];
        let local = gadget_witness_spanner(&p.fragment, l)?;
        kept.extend(local.kept().iter().map(|&e| e + p.edge_offset));
        let anchor = p.fragment.time_edge(3 * (l - 1), p.fragment.low_top()).unwrap();
        kept.push(anchor + p.edge_offset);
    }
    for (&(i, j, j2, l, l2), ids) in &out.validators {
        if chosen[&(i.min(j), i.max(j))] == l && chosen[&(i.min(j2), i.max(j2))] == l2 {
            kept.extend_from_slice(ids);
        }
    }
    Ok(Spanner::new(kept))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reach::{is_tc, Strictness};

    #[test]
    fn gadget_shape() {
        let g = edge_selection_gadget(0, 1, 4, 4, 3, 2).unwrap();
        assert_eq!(g.graph.vertex_count(), 12);
        assert_eq!(g.graph.underlying_graph().len(), 12);
        assert_eq!(g.graph.edge_count(), 144);
        assert_eq!(&g.labels[..6], &[5, 6, 7, 8, 9, 10]);
        assert_eq!(g.high_base, 6 + 24 + 5);
        assert!(is_tc(&g.graph, Strictness::Strict));
        assert!(matches!(edge_selection_gadget(0, 1, 3, 4, 3, 2), Err(ReductionError::OddEdgeCount { .. })));
    }

    #[test]
    fn witness_matches_picture() {
        let g = edge_selection_gadget(0, 1, 4, 4, 3, 2).unwrap();
        let s = gadget_witness_spanner(&g, 1).unwrap();
        assert_eq!(s.len(), 21);
        let c = g.high_base;
        let mut labels: Vec<(usize, Vec<u32>)> = (0..12)
            .map(|pos| {
                let mut ls: Vec<u32> =
                    s.kept().iter().filter(|&&e| e / 12 == pos).map(|&e| g.graph.edge(e).t).collect();
                ls.sort_unstable();
                (pos, ls)
            })
            .collect();
        labels.sort();
        let want: Vec<Vec<u32>> = vec![
            vec![c],
            vec![9, c + 1],
            vec![8, c + 2],
            vec![7, c + 3],
            vec![6, c + 4],
            vec![5, c + 5],
            vec![],
            vec![5, c + 5],
            vec![6, c + 4],
            vec![7, c + 3],
            vec![8, c + 2],
            vec![9, c + 1],
        ];
        assert_eq!(labels.into_iter().map(|(_, l)| l).collect::<Vec<_>>(), want);
        assert!(is_tc(&g.graph.restrict(s.kept()), Strictness::Strict));
        assert!(gadget_witness_spanner(&g, 5).is_err());
    }

    #[test]
    fn instance_validation() {
        assert!(MccInstance::complete(3, 2).is_ok());
        assert!(matches!(MccInstance::complete(3, 1), Err(ReductionError::OddEdgeCount { .. })));
        let parsed = MccInstance::parse("# demo\n2 2\n0 0 1 0\n0 1 1 1\n").unwrap();
        assert_eq!(parsed.edges.len(), 2);
        assert!(MccInstance::parse("2 2\n0 0 0 1\n0 1 1 1\n").is_err());
    }

    #[test]
    fn complete_three_colors() {
        let inst = MccInstance::complete(3, 2).unwrap();
        let out = mcc_to_spanner_instance(&inst).unwrap();
        let s = mcc_witness_spanner(&out, &[0, 1, 0]).unwrap();
        assert_eq!(s.len(), out.budget);
        assert_eq!(out.budget, 6 * 12 - 2 * 3 + 8 * 3 + out.x);
    }
}
