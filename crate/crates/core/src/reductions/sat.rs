use std::fmt;

use crate::tempgraph::{Spanner, TemporalGraph, TimeEdge, VertexId};

use super::ReductionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    pub fn holds(&self, assignment: &[bool]) -> bool {
        assignment[self.var] != self.negated
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatInstance {
    pub variable_count: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl SatInstance {
    pub fn new(variable_count: usize, clauses: Vec<[Literal; 3]>) -> Result<Self, ReductionError> {
        if clauses.is_empty() {
            return Err(ReductionError::NoClauses);
        }
        for (c, clause) in clauses.iter().enumerate() {
            if let Some(l) = clause.iter().find(|l| l.var >= variable_count) {
                return Err(ReductionError::VariableOutOfRange { clause: c, var: l.var, count: variable_count });
            }
        }
        Ok(SatInstance { variable_count, clauses })
    }

    /// Index of the first clause the assignment leaves false.
    pub fn first_unsatisfied(&self, assignment: &[bool]) -> Result<Option<usize>, ReductionError> {
        if assignment.len() != self.variable_count {
            return Err(ReductionError::AssignmentLength { got: assignment.len(), want: self.variable_count });
        }
        Ok(self.clauses.iter().position(|c| !c.iter().any(|l| l.holds(assignment))))
    }

    /// DIMACS CNF: `c` comment lines, a `p cnf VARS CLAUSES` header, then
    /// zero-terminated clauses of exactly three literals.
    pub fn parse_dimacs(text: &str) -> Result<Self, ReductionError> {
        let err = |line: usize, message: String| ReductionError::Parse { line, message };
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current: Vec<Literal> = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last_line = line;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('c') {
                continue;
            }
            if trimmed.starts_with('%') {
                break;
            }
            if trimmed.starts_with('p') {
                let parts: Vec<&str> = trimmed.split_whitespace().collect();
                if header.is_some() || parts.len() != 4 || parts[1] != "cnf" {
                    return Err(err(line, "expected a single `p cnf VARS CLAUSES` header".into()));
                }
                let vars = parts[2].parse().map_err(|_| err(line, format!("bad variable count {:?}", parts[2])))?;
                let count = parts[3].parse().map_err(|_| err(line, format!("bad clause count {:?}", parts[3])))?;
                header = Some((vars, count));
                continue;
            }
            let Some((vars, _)) = header else {
                return Err(err(line, "clause before the `p cnf` header".into()));
            };
            for tok in trimmed.split_whitespace() {
                let x: i64 = tok.parse().map_err(|_| err(line, format!("bad literal {tok:?}")))?;
                if x == 0 {
                    let clause: [Literal; 3] = current.as_slice().try_into().map_err(|_| {
                        err(line, format!("clause has {} literals; exactly 3 are required", current.len()))
                    })?;
                    clauses.push(clause);
                    current.clear();
                    continue;
                }
                let var = x.unsigned_abs() as usize;
                if var > vars {
                    return Err(err(line, format!("literal {x} exceeds the declared {vars} variables")));
                }
                current.push(Literal { var: var - 1, negated: x < 0 });
            }
        }
        let Some((vars, count)) = header else {
            return Err(err(last_line, "missing `p cnf` header".into()));
        };
        if !current.is_empty() {
            return Err(err(last_line, "last clause is not terminated by 0".into()));
        }
        if clauses.len() != count {
            return Err(err(last_line, format!("header announces {count} clauses, found {}", clauses.len())));
        }
        SatInstance::new(vars, clauses)
    }
}

/// Vertex roles. Variables and clauses are 0-based; clause positions
/// (`ClauseLit`, `DummyLit`) count from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SatRole {
    U,
    V,
    W,
    X1(usize),
    X2(usize),
    XT(usize),
    XF(usize),
    /// The dummy clause `(x or not x)` of a variable.
    Dummy(usize),
    DummyLit(usize, usize),
    Clause(usize),
    ClauseLit(usize, usize),
}

impl fmt::Display for SatRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SatRole::U => write!(f, "u"),
            SatRole::V => write!(f, "v"),
            SatRole::W => write!(f, "w"),
            SatRole::X1(x) => write!(f, "x{x}_1"),
            SatRole::X2(x) => write!(f, "x{x}_2"),
            SatRole::XT(x) => write!(f, "x{x}_T"),
            SatRole::XF(x) => write!(f, "x{x}_F"),
            SatRole::Dummy(x) => write!(f, "c_x{x}"),
            SatRole::DummyLit(x, i) => write!(f, "c_x{x},{i}"),
            SatRole::Clause(c) => write!(f, "c{c}"),
            SatRole::ClauseLit(c, i) => write!(f, "c{c}_{i}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SatReductionOutput {
    pub formula: SatInstance,
    /// Happy graph; edge indices match `pre_relabel`.
    pub graph: TemporalGraph,
    pub budget: usize,
    /// Sorted edge indices of the edges every spanner must keep.
    pub critical: Vec<usize>,
    pub roles: Vec<SatRole>,
    /// The simple graph with the small labels, before relabeling.
    pub pre_relabel: TemporalGraph,
}

const PER_VARIABLE: usize = 7;
const PER_CLAUSE: usize = 4;

fn vertex_of(n_x: usize, role: SatRole) -> VertexId {
    let var = |x: usize, k: usize| 3 + PER_VARIABLE * x + k;
    let clause = |c: usize, k: usize| 3 + PER_VARIABLE * n_x + PER_CLAUSE * c + k;
    match role {
        SatRole::U => 0,
        SatRole::V => 1,
        SatRole::W => 2,
        SatRole::X1(x) => var(x, 0),
        SatRole::X2(x) => var(x, 1),
        SatRole::XT(x) => var(x, 2),
        SatRole::XF(x) => var(x, 3),
        SatRole::Dummy(x) => var(x, 4),
        SatRole::DummyLit(x, i) => var(x, 4 + i),
        SatRole::Clause(c) => clause(c, 0),
        SatRole::ClauseLit(c, i) => clause(c, i),
    }
}

impl SatReductionOutput {
    pub fn vertex(&self, role: SatRole) -> VertexId {
        vertex_of(self.formula.variable_count, role)
    }

    /// Index of the edge between two roles.
    pub fn edge_between(&self, a: SatRole, b: SatRole) -> Option<usize> {
        self.graph.find_pair(self.vertex(a), self.vertex(b))
    }

    /// Role of each vertex as text, one `vertex role` per line.
    pub fn roles_text(&self) -> String {
        self.roles.iter().enumerate().map(|(v, r)| format!("{v} {r}\n")).collect()
    }

    fn literal_end(&self, l: Literal) -> SatRole {
        if l.negated {
            SatRole::XF(l.var)
        } else {
            SatRole::XT(l.var)
        }
    }
}

pub fn sat_to_spanner_instance(phi: &SatInstance) -> Result<SatReductionOutput, ReductionError> {
    let n_x = phi.variable_count;
    let n_c = phi.clauses.len();
    if n_c == 0 {
        return Err(ReductionError::NoClauses);
    }
    let n = 3 + PER_VARIABLE * n_x + PER_CLAUSE * n_c;
    let at = |r: SatRole| vertex_of(n_x, r);
    let mut edges: Vec<TimeEdge> = Vec::new();
    let mut critical = Vec::new();
    let mut add = |a: SatRole, b: SatRole, t: u32, is_critical: bool| {
        if is_critical {
            critical.push(edges.len());
        }
        edges.push(TimeEdge::new(at(a), at(b), t));
    };
    use SatRole::*;

    add(U, V, 2, true);
    add(U, W, 4, true);
    add(V, W, 5, false);
    for x in 0..n_x {
        add(V, X1(x), 3, true);
        add(X1(x), XT(x), 4, false);
        add(X1(x), XF(x), 4, false);
        add(W, X2(x), 6, true);
        add(X2(x), XF(x), 7, true);
        add(X1(x), X2(x), 8, true);
        add(XT(x), XF(x), 8, true);
    }
    for c in 0..n_c {
        for i in 1..=3 {
            add(Clause(c), ClauseLit(c, i), 7, false);
        }
        for i in 1..=3 {
            add(ClauseLit(c, i), V, 8, false);
        }
        // The first clause is the one left out of u's neighbourhood.
        add(Clause(c), W, if c == 0 { 2 } else { 3 }, true);
    }
    for (c, clause) in phi.clauses.iter().enumerate() {
        for (i, l) in clause.iter().enumerate() {
            let end = if l.negated { XF(l.var) } else { XT(l.var) };
            add(ClauseLit(c, i + 1), end, 6, false);
        }
    }
    for x in 0..n_x {
        add(Dummy(x), DummyLit(x, 1), 7, false);
        add(Dummy(x), DummyLit(x, 2), 7, false);
        add(DummyLit(x, 1), V, 8, false);
        add(DummyLit(x, 2), V, 8, false);
        add(DummyLit(x, 1), XT(x), 6, false);
        add(DummyLit(x, 2), XF(x), 6, false);
        add(Dummy(x), W, 3, true);
    }
    let mut roles = vec![U; n];
    roles[at(V)] = V;
    roles[at(W)] = W;
    for x in 0..n_x {
        for r in [X1(x), X2(x), XT(x), XF(x), Dummy(x), DummyLit(x, 1), DummyLit(x, 2)] {
            roles[at(r)] = r;
        }
    }
    for c in 0..n_c {
        roles[at(Clause(c))] = Clause(c);
        for i in 1..=3 {
            roles[at(ClauseLit(c, i))] = ClauseLit(c, i);
        }
    }
    let skip = [at(U), at(V), at(W), at(Clause(0))];
    for z in (0..n).filter(|z| !skip.contains(z)) {
        critical.push(edges.len());
        edges.push(TimeEdge::new(at(U), z, 1));
    }

    let pre_relabel = TemporalGraph::build(n, edges)?;
    let graph = pre_relabel.relabel_to_happy()?;
    let budget = graph.edge_count() - 5 * n_c - 4 * n_x;
    Ok(SatReductionOutput { formula: phi.clone(), graph, budget, critical, roles, pre_relabel })
}

/// The spanner of size `budget` read off a satisfying assignment: per
/// variable the branch of the unused truth value is cut, per clause the
/// first satisfied literal is routed through the variable gadget and the
/// other two positions hang off `v`.
pub fn sat_witness_spanner(out: &SatReductionOutput, assignment: &[bool]) -> Result<Spanner, ReductionError> {
    if let Some(clause) = out.formula.first_unsatisfied(assignment)? {
        return Err(ReductionError::AssignmentDoesNotSatisfy { clause });
    }
    use SatRole::*;
    let mut drop: Vec<(SatRole, SatRole)> = Vec::new();
    for (x, &value) in assignment.iter().enumerate() {
        if value {
            drop.extend([(X1(x), XF(x)), (XF(x), DummyLit(x, 2)), (DummyLit(x, 2), Dummy(x)), (DummyLit(x, 1), V)]);
        } else {
            drop.extend([(X1(x), XT(x)), (XT(x), DummyLit(x, 1)), (DummyLit(x, 1), Dummy(x)), (DummyLit(x, 2), V)]);
        }
    }
    for (c, clause) in out.formula.clauses.iter().enumerate() {
        let chosen = clause.iter().position(|l| l.holds(assignment)).expect("clause is satisfied");
        drop.push((ClauseLit(c, chosen + 1), V));
        for (i, l) in clause.iter().enumerate().filter(|&(i, _)| i != chosen) {
            drop.push((Clause(c), ClauseLit(c, i + 1)));
            drop.push((ClauseLit(c, i + 1), out.literal_end(*l)));
        }
    }
    let mut keep = vec![true; out.graph.edge_count()];
    for (a, b) in drop {
        let e = out.edge_between(a, b).expect("edge exists by construction");
        keep[e] = false;
    }
    Ok(Spanner::new((0..keep.len()).filter(|&i| keep[i]).collect()))
}

#[derive(Clone, Debug)]
pub struct TwoSourceInstance {
    pub graph: TemporalGraph,
    /// The former `v` and `w`.
    pub sources: (VertexId, VertexId),
    pub budget: usize,
    /// Edge index in the reduction graph of each edge of `graph`.
    pub original_edge: Vec<usize>,
}

impl TwoSourceInstance {
    /// Carries a spanner of the full reduction graph over, dropping the
    /// edges at `u`.
    pub fn restrict_spanner(&self, full: &Spanner) -> Spanner {
        Spanner::new((0..self.original_edge.len()).filter(|&i| full.contains(self.original_edge[i])).collect())
    }
}

/// Deletes `u` and its edges; the sources are `v` and `w`. Vertices after
/// `u` shift down by one.
pub fn sat_two_source_variant(out: &SatReductionOutput) -> Result<TwoSourceInstance, ReductionError> {
    let u = out.vertex(SatRole::U);
    let shift = |x: VertexId| if x > u { x - 1 } else { x };
    let mut edges = Vec::new();
    let mut original_edge = Vec::new();
    for (i, e) in out.graph.edges().iter().enumerate() {
        if !e.touches(u) {
            edges.push(TimeEdge::new(shift(e.u), shift(e.v), e.t));
            original_edge.push(i);
        }
    }
    let removed = out.graph.edge_count() - edges.len();
    let graph = TemporalGraph::build(out.graph.vertex_count() - 1, edges)?;
    let sources = (shift(out.vertex(SatRole::V)), shift(out.vertex(SatRole::W)));
    Ok(TwoSourceInstance { graph, sources, budget: out.budget - removed, original_edge })
}
