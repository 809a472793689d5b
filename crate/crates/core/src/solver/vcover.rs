use std::collections::BTreeSet;

use crate::tempgraph::VertexId;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexCover {
    /// Sorted, distinct.
    pub members: Vec<VertexId>,
}

impl VertexCover {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

pub fn is_vertex_cover(pairs: &BTreeSet<(VertexId, VertexId)>, members: &[VertexId]) -> bool {
    pairs.iter().all(|(a, b)| members.contains(a) || members.contains(b))
}

/// Minimum vertex cover by a bounded search tree: for growing k, branch on
/// the two endpoints of the first uncovered pair.
pub fn min_vertex_cover(pairs: &BTreeSet<(VertexId, VertexId)>, n: usize) -> VertexCover {
    let pairs: Vec<(VertexId, VertexId)> = pairs.iter().copied().collect();
    let mut taken = vec![false; n];
    for k in 0..=n {
        if branch(&pairs, k, &mut taken) {
            let members = (0..n).filter(|&v| taken[v]).collect();
            return VertexCover { members };
        }
    }
    unreachable!("all vertices always form a cover")
}

fn branch(pairs: &[(VertexId, VertexId)], k: usize, taken: &mut [bool]) -> bool {
    let Some(&(a, b)) = pairs.iter().find(|(a, b)| !taken[*a] && !taken[*b]) else {
        return true;
    };
    if k == 0 {
        return false;
    }
    for x in [a, b] {
        taken[x] = true;
        if branch(pairs, k - 1, taken) {
            return true;
        }
        taken[x] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(list: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
        list.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect()
    }

    #[test]
    fn small_covers() {
        assert_eq!(min_vertex_cover(&pairs(&[(0, 1)]), 2).size(), 1);
        assert_eq!(min_vertex_cover(&pairs(&[(0, 1), (1, 2), (0, 2)]), 3).size(), 2);
        assert_eq!(min_vertex_cover(&BTreeSet::new(), 3).size(), 0);
    }

    #[test]
    fn petersen_needs_six() {
        let mut list = Vec::new();
        for i in 0..5 {
            list.push((i, (i + 1) % 5));
            list.push((i, i + 5));
            list.push((i + 5, (i + 2) % 5 + 5));
        }
        let p = pairs(&list);
        let cover = min_vertex_cover(&p, 10);
        assert!(is_vertex_cover(&p, &cover.members));
        assert_eq!(cover.size(), 6);
        // Brute force: no 5-subset covers.
        let none_smaller = (0u32..1 << 10)
            .filter(|m| m.count_ones() <= 5)
            .all(|m| !is_vertex_cover(&p, &(0..10).filter(|v| m >> v & 1 == 1).collect::<Vec<_>>()));
        assert!(none_smaller);
    }
}
