//! Exact minimum spanners for desk-scale instances.

use crate::reach::Strictness;
use crate::tempgraph::{Spanner, TemporalGraph};

use super::satenc::SpannerCnf;
use super::{forced_within, Checker, Requirement, SolverError, SpannerSolution};

/// Largest number of removable edges accepted by full subset enumeration.
pub const ENUMERATION_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactStrategy {
    /// Branch-and-bound for small instances, SAT decision search otherwise.
    Auto,
    BranchAndBound,
    Sat,
    /// Every subset of the removable edges; capped at [`ENUMERATION_LIMIT`].
    Enumerate,
}

#[derive(Clone, Debug)]
pub struct ExactConfig {
    /// Refuse instances with more removable (non-forced) edges than this.
    pub cap: usize,
    pub strategy: ExactStrategy,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig { cap: 40, strategy: ExactStrategy::Auto }
    }
}

/// Above this many removable edges `Auto` switches to the SAT route.
const AUTO_BNB_LIMIT: usize = 24;

pub fn min_spanner_exact(
    g: &TemporalGraph,
    s: Strictness,
    budget: Option<usize>,
    req: Requirement,
) -> Result<SpannerSolution, SolverError> {
    min_spanner_exact_with(g, s, budget, req, &ExactConfig::default())
}

/// Full subset enumeration over the removable edges.
pub fn min_spanner_enumerate(
    g: &TemporalGraph,
    s: Strictness,
    req: Requirement,
) -> Result<SpannerSolution, SolverError> {
    let cfg = ExactConfig { cap: ENUMERATION_LIMIT, strategy: ExactStrategy::Enumerate };
    min_spanner_exact_with(g, s, None, req, &cfg)
}

pub fn min_spanner_exact_with(
    g: &TemporalGraph,
    s: Strictness,
    budget: Option<usize>,
    req: Requirement,
    cfg: &ExactConfig,
) -> Result<SpannerSolution, SolverError> {
    let mut checker = Checker::new(g, s, req)?;
    let m = g.edge_count();
    let mut active = vec![true; m];
    if !checker.ok(&active) {
        return Err(SolverError::RequirementNotSatisfied);
    }
    let forced = forced_within(&mut checker, &mut active);
    let mut is_forced = vec![false; m];
    forced.iter().for_each(|&i| is_forced[i] = true);
    let removable = contribution_order(&mut checker, &is_forced);
    let limit = match cfg.strategy {
        ExactStrategy::Enumerate => cfg.cap.min(ENUMERATION_LIMIT),
        _ => cfg.cap,
    };
    if removable.len() > limit {
        return Err(SolverError::InstanceTooLarge { removable: removable.len(), cap: limit });
    }

    let greedy = greedy_minimal(&mut checker, m, &removable);
    let strategy = match cfg.strategy {
        ExactStrategy::Auto if removable.len() <= AUTO_BNB_LIMIT => ExactStrategy::BranchAndBound,
        ExactStrategy::Auto => ExactStrategy::Sat,
        other => other,
    };
    let (best, optimal) = match strategy {
        ExactStrategy::BranchAndBound => {
            let mut bnb = BranchAndBound {
                checker: &mut checker,
                order: removable.clone(),
                active: vec![true; m],
                best: greedy.clone(),
                budget,
                stop: false,
            };
            if budget.is_some_and(|k| greedy.len() <= k) {
                bnb.stop = true;
            } else {
                bnb.search(0, forced.len());
            }
            let stop = bnb.stop;
            (bnb.best, !stop)
        }
        ExactStrategy::Sat => sat_search(g, s, req, &is_forced, &removable, greedy, budget),
        ExactStrategy::Enumerate => (enumerate(&mut checker, m, &forced, &removable), true),
        ExactStrategy::Auto => unreachable!(),
    };
    let size = best.len();
    let within_budget = budget.map(|k| size <= k);
    // A budget hit ends the search early; it is still optimal if it meets
    // the trivial lower bound.
    let optimal = optimal || size == forced.len();
    Ok(SpannerSolution { spanner: Spanner::new(best), optimal, within_budget })
}

/// Removable edges, least reachability contribution first.
fn contribution_order(checker: &mut Checker, is_forced: &[bool]) -> Vec<usize> {
    let m = is_forced.len();
    let mut active = vec![true; m];
    let full = checker.reached_pairs(&active);
    let mut scored = Vec::new();
    for i in (0..m).filter(|&i| !is_forced[i]) {
        active[i] = false;
        let lost = full - checker.reached_pairs(&active);
        active[i] = true;
        scored.push((lost, i));
    }
    scored.sort_unstable();
    scored.into_iter().map(|(_, i)| i).collect()
}

/// Drops removable edges one by one in order while the requirement holds.
pub(crate) fn greedy_minimal(checker: &mut Checker, m: usize, order: &[usize]) -> Vec<usize> {
    let mut active = vec![true; m];
    for &i in order {
        active[i] = false;
        if !checker.ok(&active) {
            active[i] = true;
        }
    }
    (0..m).filter(|&i| active[i]).collect()
}

struct BranchAndBound<'c, 'g> {
    checker: &'c mut Checker<'g>,
    order: Vec<usize>,
    active: Vec<bool>,
    best: Vec<usize>,
    budget: Option<usize>,
    stop: bool,
}

impl BranchAndBound<'_, '_> {
    /// Decides `order[idx..]`; `kept` counts forced plus included edges.
    /// Undecided edges are active, so the active set is always feasible.
    fn search(&mut self, idx: usize, kept: usize) {
        if self.stop {
            return;
        }
        if idx == self.order.len() {
            if kept < self.best.len() {
                self.best = (0..self.active.len()).filter(|&i| self.active[i]).collect();
                if self.budget.is_some_and(|k| kept <= k) {
                    self.stop = true;
                }
            }
            return;
        }
        // Undecided edges that are indispensable under the current active set
        // are in every spanner below this node.
        let mut must = Vec::new();
        for j in idx..self.order.len() {
            let e = self.order[j];
            self.active[e] = false;
            if !self.checker.ok(&self.active) {
                must.push(j);
            }
            self.active[e] = true;
        }
        if kept + must.len() >= self.best.len() {
            return;
        }
        let e = self.order[idx];
        if must.first() == Some(&idx) {
            self.search(idx + 1, kept + 1);
            return;
        }
        self.active[e] = false;
        self.search(idx + 1, kept);
        self.active[e] = true;
        self.search(idx + 1, kept + 1);
    }
}

fn enumerate(checker: &mut Checker, m: usize, forced: &[usize], removable: &[usize]) -> Vec<usize> {
    let r = removable.len();
    let mut best: Option<(usize, u64)> = None;
    let mut active = vec![false; m];
    forced.iter().for_each(|&i| active[i] = true);
    for mask in 0u64..(1u64 << r) {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|(b, _)| size >= b) {
            continue;
        }
        for (k, &i) in removable.iter().enumerate() {
            active[i] = mask >> k & 1 == 1;
        }
        if checker.ok(&active) {
            best = Some((size, mask));
        }
    }
    let (_, mask) = best.expect("the full edge set satisfies the requirement");
    let mut kept = forced.to_vec();
    kept.extend(removable.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i));
    kept.sort_unstable();
    kept
}

/// Tightens the bound on removable edges until the solver reports UNSAT.
fn sat_search(
    g: &TemporalGraph,
    s: Strictness,
    req: Requirement,
    is_forced: &[bool],
    removable: &[usize],
    greedy: Vec<usize>,
    budget: Option<usize>,
) -> (Vec<usize>, bool) {
    let forced_count = is_forced.iter().filter(|&&f| f).count();
    if budget.is_some_and(|k| greedy.len() <= k) {
        return (greedy, false);
    }
    let sources: Vec<usize> = req.sources().unwrap_or_else(|| (0..g.vertex_count()).collect());
    let upper = greedy.len() - forced_count;
    let mut cnf = SpannerCnf::new(g, s, &sources, is_forced, removable, upper);
    let assemble = |chosen: Vec<usize>| {
        let mut kept: Vec<usize> = (0..is_forced.len()).filter(|&i| is_forced[i]).collect();
        kept.extend(chosen);
        kept.sort_unstable();
        kept
    };
    let mut best = greedy;
    if let Some(k) = budget {
        // Settle the budget question first; a hit ends the search.
        if k >= forced_count {
            if let Some(chosen) = cnf.solve_at_most(k - forced_count) {
                return (assemble(chosen), false);
            }
        }
    }
    while best.len() > forced_count {
        let bound = best.len() - forced_count - 1;
        match cnf.solve_at_most(bound) {
            Some(chosen) => best = assemble(chosen),
            None => break,
        }
    }
    (best, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reach::is_tc;
    use crate::tempgraph::TimeEdge;

    fn complete_happy(n: usize) -> TemporalGraph {
        let mut edges = Vec::new();
        let mut t = 0;
        for a in 0..n {
            for b in a + 1..n {
                t += 1;
                edges.push(TimeEdge::new(a, b, t));
            }
        }
        TemporalGraph::build(n, edges).unwrap().relabel_to_happy().unwrap()
    }

    #[test]
    fn single_edge() {
        let g = TemporalGraph::build(2, vec![TimeEdge::new(0, 1, 1)]).unwrap();
        let sol = min_spanner_exact(&g, Strictness::Strict, None, Requirement::AllPairs).unwrap();
        assert_eq!((sol.size(), sol.optimal), (1, true));
    }

    #[test]
    fn strategies_agree_on_complete_graphs() {
        for n in 3..=5 {
            let g = complete_happy(n);
            let mut sizes = Vec::new();
            for strategy in [ExactStrategy::BranchAndBound, ExactStrategy::Sat, ExactStrategy::Enumerate] {
                let cfg = ExactConfig { cap: 40, strategy };
                let sol = min_spanner_exact_with(&g, Strictness::Strict, None, Requirement::AllPairs, &cfg).unwrap();
                assert!(sol.optimal);
                assert!(is_tc(&g.restrict(sol.spanner.kept()), Strictness::Strict));
                sizes.push(sol.size());
            }
            assert!(sizes.windows(2).all(|w| w[0] == w[1]), "n={n}: {sizes:?}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = complete_happy(6);
        let cfg = ExactConfig { cap: 3, strategy: ExactStrategy::Auto };
        let err = min_spanner_exact_with(&g, Strictness::Strict, None, Requirement::AllPairs, &cfg).unwrap_err();
        assert!(matches!(err, SolverError::InstanceTooLarge { cap: 3, .. }));
    }

    #[test]
    fn budget_answers_decision_question() {
        let g = complete_happy(5);
        let opt = min_spanner_exact(&g, Strictness::Strict, None, Requirement::AllPairs).unwrap().size();
        for strategy in [ExactStrategy::BranchAndBound, ExactStrategy::Sat] {
            let cfg = ExactConfig { cap: 40, strategy };
            let yes = min_spanner_exact_with(&g, Strictness::Strict, Some(opt), Requirement::AllPairs, &cfg).unwrap();
            assert_eq!(yes.within_budget, Some(true));
            assert!(yes.size() <= opt);
            let no =
                min_spanner_exact_with(&g, Strictness::Strict, Some(opt - 1), Requirement::AllPairs, &cfg).unwrap();
            assert_eq!((no.within_budget, no.size(), no.optimal), (Some(false), opt, true));
        }
    }

    #[test]
    fn nonstrict_groups_propagate_within_a_label() {
        // A star whose edges all share label 1 is connected only non-strictly.
        let g = TemporalGraph::build(
            4,
            vec![TimeEdge::new(0, 1, 1), TimeEdge::new(0, 2, 1), TimeEdge::new(0, 3, 1), TimeEdge::new(1, 2, 2)],
        )
        .unwrap();
        for strategy in [ExactStrategy::BranchAndBound, ExactStrategy::Sat, ExactStrategy::Enumerate] {
            let cfg = ExactConfig { cap: 40, strategy };
            let sol = min_spanner_exact_with(&g, Strictness::NonStrict, None, Requirement::AllPairs, &cfg).unwrap();
            assert_eq!(sol.spanner.kept(), &[0, 1, 2]);
        }
    }
}
