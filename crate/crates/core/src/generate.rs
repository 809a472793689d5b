//! Seeded random happy temporal graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::reach::{is_tc, Strictness};
use crate::tempgraph::{TemporalGraph, TimeEdge};

#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub n: usize,
    /// When set, the underlying graph has a vertex cover of at most this size:
    /// edges run only inside a random cover set or from it to the rest.
    pub cover_size: Option<usize>,
    /// Probability of each candidate pair being present.
    pub edge_prob: f64,
    pub max_retries: usize,
}

impl RandomSpec {
    pub fn new(n: usize) -> Self {
        RandomSpec { n, cover_size: None, edge_prob: 0.5, max_retries: 10_000 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("no temporally connected sample within {0} attempts")]
    RetriesExhausted(usize),
    #[error("invalid parameters: {0}")]
    BadSpec(String),
}

/// Samples a connected underlying graph, labels its pairs with a random
/// permutation of `1..=m` (so the result is happy), and retries until the
/// result is temporally connected. Deterministic for a given seed.
pub fn random_happy_tc(spec: &RandomSpec, seed: u64) -> Result<TemporalGraph, GenError> {
    if spec.n == 0 || !(0.0..=1.0).contains(&spec.edge_prob) {
        return Err(GenError::BadSpec(format!("n={} p={}", spec.n, spec.edge_prob)));
    }
    if spec.cover_size == Some(0) && spec.n > 1 {
        return Err(GenError::BadSpec("an empty cover allows no edges".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..spec.max_retries.max(1) {
        let pairs = sample_pairs(spec, &mut rng);
        if !connected(spec.n, &pairs) {
            continue;
        }
        let mut labels: Vec<u32> = (1..=pairs.len() as u32).collect();
        labels.shuffle(&mut rng);
        let edges = pairs.iter().zip(labels).map(|(&(a, b), t)| TimeEdge::new(a, b, t)).collect();
        let g = TemporalGraph::build(spec.n, edges).expect("distinct pairs with distinct labels");
        if is_tc(&g, Strictness::Strict) {
            return Ok(g);
        }
    }
    Err(GenError::RetriesExhausted(spec.max_retries))
}

fn sample_pairs(spec: &RandomSpec, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let n = spec.n;
    let in_cover: Vec<bool> = match spec.cover_size {
        Some(d) if d < n => {
            let mut vs: Vec<usize> = (0..n).collect();
            vs.shuffle(rng);
            let mut mark = vec![false; n];
            vs[..d].iter().for_each(|&v| mark[v] = true);
            mark
        }
        _ => vec![true; n],
    };
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if (in_cover[a] || in_cover[b]) && rng.gen_bool(spec.edge_prob) {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

fn connected(n: usize, pairs: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &(a, b) in pairs {
            let y = if a == x {
                b
            } else if b == x {
                a
            } else {
                continue;
            };
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
