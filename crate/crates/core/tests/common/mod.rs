//! Shared corpora for the integration tests.
#![allow(dead_code)]

use tempspan::generate::{random_happy_tc, RandomSpec};
use tempspan::reductions::{Literal, SatInstance};
use tempspan::TemporalGraph;

/// Seeded random happy TC graphs with `3 <= n <= 10` and vertex cover
/// number at most 3, as `(seed, graph)`. Seeds whose parameters admit no
/// TC sample within the retry budget are skipped.
pub fn vc_corpus(count: usize) -> Vec<(u64, TemporalGraph)> {
    let mut out = Vec::with_capacity(count);
    let mut seed = 0u64;
    while out.len() < count {
        let n = 3 + (seed % 8) as usize;
        let d = 2 + ((seed / 8) % 2) as usize;
        let spec = RandomSpec { n, cover_size: Some(d), edge_prob: 0.7, max_retries: 2_000 };
        if let Ok(g) = random_happy_tc(&spec, seed) {
            out.push((seed, g));
        }
        seed += 1;
    }
    out
}

/// All clauses over `vars` variables as sorted literal multisets.
pub fn all_clauses(vars: usize) -> Vec<[Literal; 3]> {
    let lits: Vec<Literal> = (0..vars).flat_map(|v| [Literal::pos(v), Literal::neg(v)]).collect();
    let mut out = Vec::new();
    for a in 0..lits.len() {
        for b in a..lits.len() {
            for c in b..lits.len() {
                out.push([lits[a], lits[b], lits[c]]);
            }
        }
    }
    out
}

/// Every formula with `1..=max_vars` variables and `1..=max_clauses`
/// clauses, clause order included (the first clause plays a special role).
pub fn exhaustive_formulas(max_vars: usize, max_clauses: usize) -> Vec<SatInstance> {
    let mut out = Vec::new();
    for vars in 1..=max_vars {
        let clauses = all_clauses(vars);
        let mut seqs: Vec<Vec<[Literal; 3]>> = vec![vec![]];
        for _ in 0..max_clauses {
            seqs = seqs
                .iter()
                .flat_map(|s| {
                    clauses.iter().map(move |c| {
                        let mut t = s.clone();
                        t.push(*c);
                        t
                    })
                })
                .collect();
            out.extend(seqs.iter().map(|s| SatInstance::new(vars, s.clone()).unwrap()));
        }
    }
    out
}

/// Brute-force satisfiability; returns a satisfying assignment if any.
pub fn brute_force_sat(phi: &SatInstance) -> Option<Vec<bool>> {
    (0u32..1 << phi.variable_count)
        .map(|mask| (0..phi.variable_count).map(|v| mask >> v & 1 == 1).collect::<Vec<bool>>())
        .find(|a| phi.clauses.iter().all(|c| c.iter().any(|l| a[l.var] != l.negated)))
}

/// Small deterministic generator for formulas; avoids tying the corpus to
/// the library's own RNG use.
pub fn random_formula(seed: u64, vars: usize, clauses: usize) -> SatInstance {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = |bound: usize| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % bound as u64) as usize
    };
    let cl = (0..clauses)
        .map(|_| {
            [0; 3].map(|_| {
                let v = next(vars);
                if next(2) == 1 {
                    Literal::neg(v)
                } else {
                    Literal::pos(v)
                }
            })
        })
        .collect();
    SatInstance::new(vars, cl).unwrap()
}

/// Order-free form of a template: cover nodes by vertex, placeholders
/// anonymous, children sorted.
pub fn canonical(t: &tempspan::solver::Template) -> String {
    fn go(t: &tempspan::solver::Template, i: usize) -> String {
        let mut kids: Vec<String> = t.children(i).into_iter().map(|c| go(t, c)).collect();
        kids.sort();
        let me = match t.nodes[i] {
            tempspan::solver::TemplateNode::Cover(x) => x.to_string(),
            tempspan::solver::TemplateNode::Placeholder(_) => "p".to_string(),
        };
        format!("{me}({})", kids.join(","))
    }
    go(t, 0)
}
