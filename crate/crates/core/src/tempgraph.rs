//! Temporal graphs: time edges over a fixed vertex set, structural
//! classification, and the `.tg` text format.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

pub type VertexId = usize;

/// One appearance of the edge `{u, v}` at time `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TimeEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub t: u32,
}

impl TimeEdge {
    pub fn new(u: VertexId, v: VertexId, t: u32) -> Self {
        TimeEdge { u, v, t }
    }

    /// Endpoints as `(min, max)`.
    pub fn pair(&self) -> (VertexId, VertexId) {
        if self.u < self.v {
            (self.u, self.v)
        } else {
            (self.v, self.u)
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            assert_eq!(self.v, x, "vertex {x} is not an endpoint");
            self.u
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("a temporal graph needs at least one vertex")]
    NoVertices,
    #[error("edge {index} repeats the time edge ({u}, {v}) at label {t}")]
    DuplicateTimeEdge { index: usize, u: VertexId, v: VertexId, t: u32 },
    #[error("edge {index} has endpoint {vertex} outside [0, {n})")]
    EndpointOutOfRange { index: usize, vertex: VertexId, n: usize },
    #[error("edge {index} is a self-loop on vertex {vertex}")]
    SelfLoop { index: usize, vertex: VertexId },
    #[error("edge {index} has label 0; labels start at 1")]
    ZeroLabel { index: usize },
    #[error("graph is not simple: pair ({u}, {v}) carries more than one label")]
    NotSimple { u: VertexId, v: VertexId },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

/// An immutable temporal graph. Edge order is preserved exactly as given;
/// the lifetime is the largest label (1 when there are no edges).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalGraph {
    n: usize,
    edges: Vec<TimeEdge>,
    lifetime: u32,
    by_label: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphClass {
    pub simple: bool,
    pub proper: bool,
    pub happy: bool,
}

impl TemporalGraph {
    pub fn build(n: usize, edges: Vec<TimeEdge>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for (index, e) in edges.iter().enumerate() {
            for vertex in [e.u, e.v] {
                if vertex >= n {
                    return Err(GraphError::EndpointOutOfRange { index, vertex, n });
                }
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop { index, vertex: e.u });
            }
            if e.t == 0 {
                return Err(GraphError::ZeroLabel { index });
            }
            let (a, b) = e.pair();
            if !seen.insert((a, b, e.t)) {
                return Err(GraphError::DuplicateTimeEdge { index, u: e.u, v: e.v, t: e.t });
            }
        }
        let lifetime = edges.iter().map(|e| e.t).max().unwrap_or(1);
        let mut by_label: Vec<usize> = (0..edges.len()).collect();
        by_label.sort_by_key(|&i| (edges[i].t, i));
        Ok(TemporalGraph { n, edges, lifetime, by_label })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[TimeEdge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> TimeEdge {
        self.edges[i]
    }

    pub fn lifetime(&self) -> u32 {
        self.lifetime
    }

    /// Edge indices sorted by `(label, index)`.
    pub fn edges_by_label(&self) -> &[usize] {
        &self.by_label
    }

    /// Indices of the edges incident to `x`, in stored order.
    pub fn incident(&self, x: VertexId) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].touches(x)).collect()
    }

    /// Index of the first stored edge on the pair `{a, b}`, if any.
    pub fn find_pair(&self, a: VertexId, b: VertexId) -> Option<usize> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.iter().position(|e| e.pair() == key)
    }

    /// The subgraph on the same vertex set keeping the listed edges, in the
    /// order given.
    pub fn restrict(&self, kept: &[usize]) -> TemporalGraph {
        let edges = kept.iter().map(|&i| self.edges[i]).collect();
        TemporalGraph::build(self.n, edges).expect("a subset of a valid edge list is valid")
    }

    pub fn classify(&self) -> GraphClass {
        let simple = self.is_simple();
        let mut at_vertex = HashSet::new();
        let proper = self.edges.iter().all(|e| at_vertex.insert((e.u, e.t)) & at_vertex.insert((e.v, e.t)));
        GraphClass { simple, proper, happy: simple && proper }
    }

    fn is_simple(&self) -> bool {
        let mut pairs = HashSet::new();
        self.edges.iter().all(|e| pairs.insert(e.pair()))
    }

    /// The static graph of pairs that appear at least once.
    pub fn underlying_graph(&self) -> BTreeSet<(VertexId, VertexId)> {
        self.edges.iter().map(|e| e.pair()).collect()
    }

    /// Gives every edge its ordinal position in the order
    /// (label, smaller endpoint, larger endpoint, stored index).
    /// The result keeps the stored edge order; only labels change.
    pub fn relabel_to_happy(&self) -> Result<TemporalGraph, GraphError> {
        let mut pairs = HashSet::new();
        for e in &self.edges {
            if !pairs.insert(e.pair()) {
                let (u, v) = e.pair();
                return Err(GraphError::NotSimple { u, v });
            }
        }
        let mut order: Vec<usize> = (0..self.edges.len()).collect();
        order.sort_by_key(|&i| {
            let (a, b) = self.edges[i].pair();
            (self.edges[i].t, a, b, i)
        });
        let mut edges = self.edges.clone();
        for (rank, &i) in order.iter().enumerate() {
            edges[i].t = rank as u32 + 1;
        }
        TemporalGraph::build(self.n, edges)
    }

    /// Parses the `.tg` format: a header `n T`, then one `u v t` per line.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<TemporalGraph, ParseError> {
        let mut header: Option<(usize, u32)> = None;
        let mut edges = Vec::new();
        let mut edge_lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match header {
                None => {
                    if fields.len() != 2 {
                        return Err(ParseError::new(line_no, "expected header `n T`"));
                    }
                    let n = parse_num::<usize>(fields[0], line_no, "vertex count")?;
                    let t = parse_num::<u32>(fields[1], line_no, "lifetime")?;
                    if n == 0 {
                        return Err(ParseError::new(line_no, "vertex count must be positive"));
                    }
                    header = Some((n, t));
                }
                Some((n, lifetime)) => {
                    if fields.len() != 3 {
                        return Err(ParseError::new(line_no, "expected edge line `u v t`"));
                    }
                    let u = parse_num::<usize>(fields[0], line_no, "endpoint")?;
                    let v = parse_num::<usize>(fields[1], line_no, "endpoint")?;
                    let t = parse_num::<u32>(fields[2], line_no, "label")?;
                    if u >= n || v >= n {
                        return Err(ParseError::new(line_no, format!("endpoint out of range [0, {n})")));
                    }
                    if u == v {
                        return Err(ParseError::new(line_no, "self-loop"));
                    }
                    if t == 0 || t > lifetime {
                        return Err(ParseError::new(line_no, format!("label {t} outside [1, {lifetime}]")));
                    }
                    edges.push(TimeEdge::new(u, v, t));
                    edge_lines.push(line_no);
                }
            }
        }
        let (n, lifetime) = header.ok_or_else(|| ParseError::new(1, "missing header"))?;
        let g = TemporalGraph::build(n, edges).map_err(|e| match e {
            GraphError::DuplicateTimeEdge { index, .. } => ParseError::new(edge_lines[index], "duplicate time edge"),
            other => ParseError::new(1, other.to_string()),
        })?;
        if g.edge_count() > 0 && g.lifetime != lifetime {
            return Err(ParseError::new(
                1,
                format!("header lifetime {lifetime} differs from largest label {}", g.lifetime),
            ));
        }
        if g.edge_count() == 0 && lifetime != 1 {
            return Err(ParseError::new(1, "an edgeless graph has lifetime 1"));
        }
        Ok(g)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.n, self.lifetime).unwrap();
        for e in &self.edges {
            writeln!(out, "{} {} {}", e.u, e.v, e.t).unwrap();
        }
        out
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, line: usize, what: &str) -> Result<T, ParseError> {
    s.parse().map_err(|_| ParseError::new(line, format!("invalid {what} `{s}`")))
}

/// A subset of a parent graph's time edges, by index. Indices are kept
/// sorted and distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Spanner {
    kept: Vec<usize>,
}

impl Spanner {
    pub fn new(mut kept: Vec<usize>) -> Self {
        kept.sort_unstable();
        kept.dedup();
        Spanner { kept }
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn len(&self) -> usize {
        self.kept.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kept.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.kept.binary_search(&i).is_ok()
    }

    pub fn fits(&self, g: &TemporalGraph) -> bool {
        self.kept.last().is_none_or(|&i| i < g.edge_count())
    }

    /// One index per line.
    pub fn to_index_text(&self) -> String {
        self.kept.iter().map(|i| format!("{i}\n")).collect()
    }

    /// One `u v t` triple per line, in index order.
    pub fn to_triple_text(&self, g: &TemporalGraph) -> String {
        self.kept
            .iter()
            .map(|&i| {
                let e = g.edge(i);
                format!("{} {} {}\n", e.u, e.v, e.t)
            })
            .collect()
    }

    pub fn parse_indices(text: &str, g: &TemporalGraph) -> Result<Spanner, ParseError> {
        let mut kept = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let i = parse_num::<usize>(line, idx + 1, "edge index")?;
            if i >= g.edge_count() {
                return Err(ParseError::new(idx + 1, format!("edge index {i} out of range")));
            }
            kept.push(i);
        }
        Ok(Spanner::new(kept))
    }

    /// Resolves `u v t` triples to indices of `g` (endpoint order ignored).
    pub fn parse_triples(text: &str, g: &TemporalGraph) -> Result<Spanner, ParseError> {
        let mut kept = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(ParseError::new(line_no, "expected `u v t`"));
            }
            let u = parse_num::<usize>(fields[0], line_no, "endpoint")?;
            let v = parse_num::<usize>(fields[1], line_no, "endpoint")?;
            let t = parse_num::<u32>(fields[2], line_no, "label")?;
            let key = TimeEdge::new(u, v, t);
            let i = g
                .edges()
                .iter()
                .position(|e| e.pair() == key.pair() && e.t == t)
                .ok_or_else(|| ParseError::new(line_no, format!("time edge ({u}, {v}, {t}) not in graph")))?;
            kept.push(i);
        }
        Ok(Spanner::new(kept))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn te(u: usize, v: usize, t: u32) -> TimeEdge {
        TimeEdge::new(u, v, t)
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert!(matches!(
            TemporalGraph::build(2, vec![te(0, 1, 1), te(1, 0, 1)]),
            Err(GraphError::DuplicateTimeEdge { index: 1, .. })
        ));
        assert!(matches!(TemporalGraph::build(2, vec![te(0, 2, 1)]), Err(GraphError::EndpointOutOfRange { .. })));
        assert!(matches!(TemporalGraph::build(2, vec![te(1, 1, 1)]), Err(GraphError::SelfLoop { .. })));
        assert!(matches!(TemporalGraph::build(0, vec![]), Err(GraphError::NoVertices)));
    }

    #[test]
    fn lifetime_is_normalized() {
        let g = TemporalGraph::build(2, vec![te(0, 1, 1)]).unwrap();
        assert_eq!((g.lifetime(), g.edge_count()), (1, 1));
        let g = TemporalGraph::build(3, vec![te(0, 1, 7), te(1, 2, 3)]).unwrap();
        assert_eq!(g.lifetime(), 7);
        assert_eq!(TemporalGraph::build(3, vec![]).unwrap().lifetime(), 1);
    }

    #[test]
    fn classification_examples() {
        let one = TemporalGraph::build(2, vec![te(0, 1, 1)]).unwrap().classify();
        assert_eq!(one, GraphClass { simple: true, proper: true, happy: true });
        let tri = TemporalGraph::build(3, vec![te(0, 1, 1), te(1, 2, 1), te(0, 2, 1)]).unwrap().classify();
        assert!(tri.simple && !tri.proper && !tri.happy);
        let multi = TemporalGraph::build(2, vec![te(0, 1, 1), te(0, 1, 2)]).unwrap().classify();
        assert!(!multi.simple && multi.proper && !multi.happy);
    }

    #[test]
    fn underlying_graph_dedups_pairs() {
        let g = TemporalGraph::build(2, vec![te(0, 1, 1), te(1, 0, 5)]).unwrap();
        assert_eq!(g.underlying_graph().into_iter().collect::<Vec<_>>(), vec![(0, 1)]);
        assert!(TemporalGraph::build(4, vec![]).unwrap().underlying_graph().is_empty());
    }

    #[test]
    fn relabel_uses_fixed_tiebreak() {
        let g = TemporalGraph::build(4, vec![te(0, 1, 3), te(2, 3, 3), te(1, 2, 1)]).unwrap();
        let h = g.relabel_to_happy().unwrap();
        let labels: Vec<u32> = h.edges().iter().map(|e| e.t).collect();
        assert_eq!(labels, vec![2, 3, 1]);
        assert!(h.classify().happy);
        let multi = TemporalGraph::build(2, vec![te(0, 1, 1), te(0, 1, 2)]).unwrap();
        assert!(matches!(multi.relabel_to_happy(), Err(GraphError::NotSimple { .. })));
    }

    #[test]
    fn relabel_is_identity_on_ordinal_labels() {
        let g = TemporalGraph::build(4, vec![te(0, 1, 2), te(1, 2, 1), te(2, 3, 3)]).unwrap();
        assert_eq!(g.relabel_to_happy().unwrap(), g);
    }

    #[test]
    fn parse_and_serialize() {
        let g = TemporalGraph::parse("2 1\n0 1 1\n").unwrap();
        assert_eq!((g.vertex_count(), g.lifetime(), g.edge_count()), (2, 1, 1));
        assert_eq!(g.serialize(), "2 1\n0 1 1\n");
        let text = "# comment\n3 4\n\n0 1 4\n2 1 2\n";
        assert_eq!(TemporalGraph::parse(text).unwrap().serialize(), "3 4\n0 1 4\n2 1 2\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = TemporalGraph::parse("2 1\n0 1 0\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(TemporalGraph::parse("3 2\n0 1 1\n0 1 1\n").unwrap_err().line, 3);
        assert_eq!(TemporalGraph::parse("3 2\n0 1\n").unwrap_err().line, 2);
        assert_eq!(TemporalGraph::parse("3 2\n0 3 1\n").unwrap_err().line, 2);
        assert!(TemporalGraph::parse("# nothing\n").is_err());
        assert!(TemporalGraph::parse("3 5\n0 1 2\n").is_err());
    }

    #[test]
    fn spanner_formats() {
        let g = TemporalGraph::build(3, vec![te(0, 1, 1), te(1, 2, 2), te(0, 2, 3)]).unwrap();
        let s = Spanner::new(vec![2, 0, 2]);
        assert_eq!(s.kept(), &[0, 2]);
        assert_eq!(s.to_index_text(), "0\n2\n");
        assert_eq!(s.to_triple_text(&g), "0 1 1\n0 2 3\n");
        assert_eq!(Spanner::parse_indices("0\n2\n", &g).unwrap(), s);
        assert_eq!(Spanner::parse_triples("2 0 3\n1 0 1\n", &g).unwrap(), s);
        assert!(Spanner::parse_indices("5\n", &g).is_err());
        assert!(Spanner::parse_triples("0 1 2\n", &g).is_err());
    }
}
