//! CNF encoding of "keep at most K removable edges and stay connected",
//! decided with a CDCL solver.
//!
//! Reachability is unrolled over the label groups of the graph. For each
//! source and vertex a literal states "reached by the end of this step";
//! it may only be true if it was already true before the step or some kept
//! edge of the step connects it to a vertex reached before. Strict groups
//! take one step; a non-strict group takes as many steps as its largest
//! connected component needs. The edge count is bounded by a sequential
//! counter whose outputs are switched on by assumptions, so successive
//! bounds reuse learned clauses.

use batsat::{lbool, BasicSolver, Lit, SolverInterface};

use crate::reach::Strictness;
use crate::tempgraph::{TemporalGraph, VertexId};

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    False,
    True,
    Var(Lit),
}

pub(crate) struct SpannerCnf {
    solver: BasicSolver,
    /// Selector literal for each removable edge, parallel to `removable`.
    select: Vec<Lit>,
    removable: Vec<usize>,
    /// `at_least[j]` is forced true when more than `j` removable edges are kept.
    at_least: Vec<Lit>,
    feasible: bool,
}

impl SpannerCnf {
    /// `keep_fixed[i]` marks edges that are always kept; `removable` lists the
    /// rest. Bounds up to `max_bound - 1` removable edges can be queried.
    pub(crate) fn new(
        g: &TemporalGraph,
        s: Strictness,
        sources: &[VertexId],
        keep_fixed: &[bool],
        removable: &[usize],
        max_bound: usize,
    ) -> Self {
        let mut solver = BasicSolver::new(Default::default(), Default::default());
        let select: Vec<Lit> = removable.iter().map(|_| Lit::new(solver.new_var_default(), true)).collect();
        let mut edge_state = vec![State::False; g.edge_count()];
        for (i, st) in edge_state.iter_mut().enumerate() {
            if keep_fixed[i] {
                *st = State::True;
            }
        }
        for (k, &i) in removable.iter().enumerate() {
            edge_state[i] = State::Var(select[k]);
        }

        let groups = label_groups(g, s);
        let mut feasible = true;
        for &src in sources {
            let mut cur = vec![State::False; g.vertex_count()];
            cur[src] = State::True;
            for (edges, steps) in &groups {
                for _ in 0..*steps {
                    let prev = cur.clone();
                    let mut support: Vec<Vec<State>> = vec![Vec::new(); g.vertex_count()];
                    for &i in edges {
                        let e = g.edge(i);
                        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                            if prev[b] == State::True {
                                continue;
                            }
                            let lit = and(&mut solver, edge_state[i], prev[a]);
                            if lit != State::False {
                                support[b].push(lit);
                            }
                        }
                    }
                    for (v, sup) in support.into_iter().enumerate() {
                        if sup.is_empty() {
                            continue;
                        }
                        if sup.contains(&State::True) {
                            cur[v] = State::True;
                            continue;
                        }
                        let r = Lit::new(solver.new_var_default(), true);
                        let mut clause = vec![!r];
                        if let State::Var(p) = prev[v] {
                            clause.push(p);
                        }
                        clause.extend(sup.iter().map(|st| match st {
                            State::Var(l) => *l,
                            _ => unreachable!(),
                        }));
                        solver.add_clause_reuse(&mut clause);
                        cur[v] = State::Var(r);
                    }
                }
            }
            for st in &cur {
                match *st {
                    State::True => {}
                    State::False => feasible = false,
                    State::Var(l) => {
                        solver.add_clause_reuse(&mut vec![l]);
                    }
                }
            }
        }

        let at_least = sequential_counter(&mut solver, &select, max_bound);
        SpannerCnf { solver, select, removable: removable.to_vec(), at_least, feasible }
    }

    /// Removable edges of some solution keeping at most `bound` of them, or
    /// `None` if none exists.
    pub(crate) fn solve_at_most(&mut self, bound: usize) -> Option<Vec<usize>> {
        if !self.feasible {
            return None;
        }
        let assumptions: Vec<Lit> = self.at_least.get(bound).map(|&l| vec![!l]).unwrap_or_default();
        if self.solver.solve_limited(&assumptions) != lbool::TRUE {
            return None;
        }
        let chosen = self
            .select
            .iter()
            .zip(&self.removable)
            .filter(|(l, _)| self.solver.value_lit(**l) == lbool::TRUE)
            .map(|(_, &i)| i)
            .collect();
        Some(chosen)
    }
}

fn and(solver: &mut BasicSolver, a: State, b: State) -> State {
    match (a, b) {
        (State::False, _) | (_, State::False) => State::False,
        (State::True, x) | (x, State::True) => x,
        (State::Var(p), State::Var(q)) => {
            let y = Lit::new(solver.new_var_default(), true);
            solver.add_clause_reuse(&mut vec![!y, p]);
            solver.add_clause_reuse(&mut vec![!y, q]);
            State::Var(y)
        }
    }
}

/// Edges grouped by label with the number of propagation steps each group needs.
fn label_groups(g: &TemporalGraph, s: Strictness) -> Vec<(Vec<usize>, usize)> {
    let order = g.edges_by_label();
    let mut groups = Vec::new();
    let mut lo = 0;
    while lo < order.len() {
        let t = g.edge(order[lo]).t;
        let mut hi = lo;
        while hi < order.len() && g.edge(order[hi]).t == t {
            hi += 1;
        }
        let edges = order[lo..hi].to_vec();
        let steps = match s {
            Strictness::Strict => 1,
            Strictness::NonStrict => largest_component(g, &edges).saturating_sub(1).max(1),
        };
        groups.push((edges, steps));
        lo = hi;
    }
    groups
}

fn largest_component(g: &TemporalGraph, edges: &[usize]) -> usize {
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for &i in edges {
        let e = g.edge(i);
        let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
        parent[a] = b;
    }
    let mut touched = vec![false; g.vertex_count()];
    for &i in edges {
        for x in [g.edge(i).u, g.edge(i).v] {
            touched[x] = true;
        }
    }
    let mut comp = vec![0usize; g.vertex_count()];
    for x in (0..g.vertex_count()).filter(|&x| touched[x]) {
        let r = find(&mut parent, x);
        comp[r] += 1;
    }
    comp.into_iter().max().unwrap_or(0)
}

/// Sinz's sequential counter, one direction only: returns `out` with
/// `out[j]` implied whenever at least `j + 1` inputs are true.
fn sequential_counter(solver: &mut BasicSolver, xs: &[Lit], width: usize) -> Vec<Lit> {
    if xs.is_empty() || width == 0 {
        return Vec::new();
    }
    let mut prev: Vec<Lit> = Vec::new();
    for (i, &x) in xs.iter().enumerate() {
        let row: Vec<Lit> = (0..width).map(|_| Lit::new(solver.new_var_default(), true)).collect();
        solver.add_clause_reuse(&mut vec![!x, row[0]]);
        if i > 0 {
            for j in 0..width {
                solver.add_clause_reuse(&mut vec![!prev[j], row[j]]);
                if j > 0 {
                    solver.add_clause_reuse(&mut vec![!x, !prev[j - 1], row[j]]);
                }
            }
        }
        prev = row;
    }
    prev
}
