//! Cross-module property tests, including mutation coverage: every
//! single-edge corruption of a valid decomposition must be caught by at
//! least one verifier check.

use aqtrees::builder::{build, Decomposition, Labeling};
use aqtrees::graph::{build_aq, AugmentedCube, Edge, Vertex};
use aqtrees::verify::verify_all;
use proptest::prelude::*;

fn rebuild(
    d: &Decomposition,
    mutate: impl FnOnce(&mut Vec<Vec<Edge>>, &mut Vec<Edge>),
) -> Decomposition {
    let mut trees: Vec<Vec<Edge>> = d.trees().to_vec();
    let mut leftover: Vec<Edge> = d.leftover().to_vec();
    mutate(&mut trees, &mut leftover);
    Decomposition::from_parts(
        d.n(),
        trees,
        leftover,
        Labeling::new(d.labeling().u().to_vec(), d.labeling().v().to_vec()),
    )
}

fn assert_caught(g: &AugmentedCube, d: &Decomposition, what: &str) {
    let report = verify_all(g, d).unwrap();
    assert!(
        !report.pass,
        "{what}: corrupted decomposition passed verification"
    );
}

#[test]
fn deleting_any_single_tree_edge_is_caught() {
    let g = build_aq(4).unwrap();
    let d = build(4).unwrap();
    for t in 0..d.trees().len() {
        for pos in 0..d.trees()[t].len() {
            let bad = rebuild(&d, |trees, _| {
                trees[t].remove(pos);
            });
            assert_caught(&g, &bad, &format!("delete tree {t} edge {pos}"));
        }
    }
}

#[test]
fn deleting_any_leftover_edge_is_caught() {
    let g = build_aq(4).unwrap();
    let d = build(4).unwrap();
    for pos in 0..d.leftover().len() {
        let bad = rebuild(&d, |_, leftover| {
            leftover.remove(pos);
        });
        assert_caught(&g, &bad, &format!("delete leftover edge {pos}"));
    }
}

#[test]
fn duplicating_an_edge_into_another_tree_is_caught() {
    let g = build_aq(4).unwrap();
    let d = build(4).unwrap();
    for t in 0..d.trees().len() {
        let other = (t + 1) % d.trees().len();
        let bad = rebuild(&d, |trees, _| {
            let edge = trees[other][0];
            trees[t].push(edge);
        });
        assert_caught(&g, &bad, &format!("duplicate into tree {t}"));
    }
}

#[test]
fn moving_an_edge_between_trees_is_caught() {
    let g = build_aq(4).unwrap();
    let d = build(4).unwrap();
    let bad = rebuild(&d, |trees, _| {
        let edge = trees[1].remove(0);
        trees[0].push(edge);
    });
    assert_caught(&g, &bad, "move edge tree 1 -> tree 0");
}

#[test]
fn swapping_tree_and_leftover_edges_is_caught() {
    let g = build_aq(4).unwrap();
    let d = build(4).unwrap();
    let bad = rebuild(&d, |trees, leftover| {
        std::mem::swap(&mut trees[0][0], &mut leftover[0]);
    });
    assert_caught(&g, &bad, "swap tree/leftover edges");
}

#[test]
fn inserting_a_foreign_edge_is_caught() {
    let g = build_aq(4).unwrap();
    let d = build(4).unwrap();
    // 0000-1010 differs in two bits that are not a low contiguous run, so it
    // is not an edge of AQ_4.
    let foreign = Edge::new(Vertex(0b0000), Vertex(0b1010));
    assert!(!g.contains_edge(foreign));
    let bad = rebuild(&d, |trees, _| {
        trees[0].pop();
        trees[0].push(foreign);
    });
    assert_caught(&g, &bad, "insert non-edge");
}

proptest! {
    // Replacing a random tree edge with a random *distinct* graph edge can
    // only produce a valid decomposition if it recreates the original edge;
    // every genuine change must be flagged.
    #[test]
    fn random_edge_replacement_is_caught(
        tree_idx in 0usize..3,
        edge_pos in 0usize..15,
        replacement in 0usize..56,
    ) {
        let g = build_aq(4).unwrap();
        let d = build(4).unwrap();
        let new_edge = g.edges()[replacement];
        let old_edge = d.trees()[tree_idx][edge_pos];
        prop_assume!(new_edge != old_edge);
        let bad = rebuild(&d, |trees, _| {
            trees[tree_idx][edge_pos] = new_edge;
        });
        let report = verify_all(&g, &bad).unwrap();
        prop_assert!(!report.pass);
    }

    // Build determinism across dimensions: two independent builds agree.
    #[test]
    fn builds_are_deterministic(n in 3u32..=9) {
        prop_assert_eq!(build(n).unwrap(), build(n).unwrap());
    }
}

#[test]
fn every_tree_contains_each_vertex() {
    for n in 3..=8u32 {
        let d = build(n).unwrap();
        for tree in d.trees() {
            let mut hit = vec![false; 1 << n];
            for edge in tree {
                hit[edge.a().0 as usize] = true;
                hit[edge.b().0 as usize] = true;
            }
            assert!(hit.iter().all(|&h| h), "n={n}: a vertex is missing from a tree");
        }
    }
}

#[test]
fn labeling_splits_the_vertex_set() {
    for n in 3..=10u32 {
        let d = build(n).unwrap();
        let half = 1usize << (n - 1);
        assert_eq!(d.labeling().u().len(), half);
        assert_eq!(d.labeling().v().len(), half);
        let mut seen = vec![false; 1 << n];
        for &x in d.labeling().u().iter().chain(d.labeling().v()) {
            assert!(!seen[x.0 as usize], "n={n}: duplicate label {x:?}");
            seen[x.0 as usize] = true;
        }
        assert!(seen.iter().all(|&s| s), "n={n}: labeling misses a vertex");
    }
}
