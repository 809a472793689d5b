//! The compatible-tree example drawn next to a five-vertex template: a
//! temporal out-tree of `x*` over 17 vertices with labels 1..9.

mod common;

use tempspan::reach::{is_tc, verify_out_tree};
use tempspan::solver::*;
use tempspan::{Strictness, TemporalGraph, TimeEdge};

const ROOT: usize = 0;
// Cover vertices x*, x1..x4 are 0..=4; the three placeholder images are 5, 6, 7.
const Z1: usize = 5;
const Z2: usize = 6;
const Z3: usize = 7;

fn tree() -> TemporalGraph {
    let e = |u, v, t| TimeEdge::new(u, v, t);
    let edges = vec![
        e(ROOT, Z1, 1),
        e(Z1, 1, 3),
        e(1, 10, 4),
        e(1, 11, 5),
        e(ROOT, 2, 4),
        e(2, Z3, 6),
        e(2, 8, 5),
        e(2, 9, 6),
        e(2, Z2, 7),
        e(Z2, 3, 8),
        e(3, 12, 8),
        e(3, 13, 9),
        e(3, 14, 9),
        e(Z3, 4, 7),
        e(4, 15, 8),
        e(4, 16, 9),
    ];
    TemporalGraph::build(17, edges).unwrap()
}

fn cover() -> VertexCover {
    VertexCover { members: (0..5).collect() }
}

fn template() -> Template {
    use TemplateNode::{Cover, Placeholder};
    Template {
        nodes: vec![
            Cover(ROOT),
            Placeholder(0),
            Cover(2),
            Cover(1),
            Placeholder(1),
            Placeholder(2),
            Cover(3),
            Cover(4),
        ],
        parent: vec![None, Some(0), Some(0), Some(1), Some(2), Some(2), Some(4), Some(5)],
    }
}

const LEAVES: [(usize, usize); 9] = [(8, 2), (9, 2), (10, 1), (11, 1), (12, 3), (13, 3), (14, 3), (15, 4), (16, 4)];

#[test]
fn tree_shape_and_class() {
    let g = tree();
    assert_eq!((g.vertex_count(), g.edge_count(), g.lifetime()), (17, 16, 9));
    let class = g.classify();
    assert!(class.simple);
    // x2 carries label 6 twice and x3 carries label 8 twice.
    assert!(!class.proper);
    assert!(!is_tc(&g, Strictness::NonStrict));
}

#[test]
fn tree_is_an_out_tree_only_without_strictness() {
    let g = tree();
    let all: Vec<usize> = (0..g.edge_count()).collect();
    assert!(verify_out_tree(&g, &all, ROOT, Strictness::NonStrict));
    // Reaching x3 at 8 and leaving on the 8-edge needs equal labels.
    assert!(!verify_out_tree(&g, &all, ROOT, Strictness::Strict));
}

#[test]
fn template_instantiates_to_the_tree() {
    let g = tree();
    let t = template();
    assert!(t.is_valid(&cover()));
    assert!(t.covers(&cover()));
    let inst = instantiate_template(&g, &t, &[Z1, Z2, Z3], &LEAVES, ROOT);
    let all: Vec<usize> = (0..g.edge_count()).collect();
    assert_eq!(inst, Instantiation::Edges(all.clone()));
    assert!(verify_out_tree(&g, &all, ROOT, Strictness::NonStrict));
}

#[test]
fn swapped_placeholders_are_incompatible() {
    let g = tree();
    // z2 is not adjacent to x2's sibling slot target x4.
    assert_eq!(instantiate_template(&g, &template(), &[Z1, Z3, Z2], &LEAVES, ROOT), Instantiation::Incompatible);
    // A leaf hung below a cover vertex it is not adjacent to.
    let mut leaves = LEAVES;
    leaves[0] = (8, 4);
    assert_eq!(instantiate_template(&g, &template(), &[Z1, Z2, Z3], &leaves, ROOT), Instantiation::Incompatible);
}

#[test]
fn template_is_enumerated() {
    let ts = enumerate_templates(&cover());
    let drawn = common::canonical(&template());
    assert_eq!(ts.iter().filter(|t| common::canonical(t) == drawn).count(), 1);
}

#[test]
fn tree_as_solver_input() {
    let g = tree();
    assert_eq!(min_spanner_xp_vc(&g, None).unwrap_err(), SolverError::NotHappy);
    let happy = g.relabel_to_happy().unwrap();
    assert_eq!(min_spanner_xp_vc(&happy, None).unwrap_err(), SolverError::NotTemporallyConnected);
}
