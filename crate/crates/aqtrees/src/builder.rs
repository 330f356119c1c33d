//! Construction of the maximal edge-disjoint spanning tree family.
//!
//! The decomposition of `AQ_n` consists of `n - 1` pairwise edge-disjoint
//! spanning trees `T_1..T_{n-1}` plus a *leftover* tree `T_n` holding the
//! `2^(n-1) + n - 1` remaining edges, together with a labeling of the
//! vertices into `u_1..u_{2^(n-1)}` and `v_1..v_{2^(n-1)}` such that:
//!
//! - the leftover tree spans exactly `{u_*} ∪ {v_1..v_n}`, and
//! - `v_i` is internal (degree >= 2) in `T_i` for `i <= n - 1`.
//!
//! These two conditions are what make the induction executable: the base
//! case is a fixed decomposition of `AQ_3`, and [`extend`] lifts a verified
//! decomposition of `AQ_n` to one of `AQ_{n+1}` by gluing two copies with
//! the cross edges split across the trees. Both the base case and every
//! extension are re-verified with [`crate::verify::verify_all`] at
//! construction time.

use crate::graph::{build_aq, build_aq_capped, Edge, Vertex, DEFAULT_MAX_DIMENSION};
use crate::verify;
use crate::{Error, Result};

/// The u/v split of the vertex set carried along by the induction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    u: Vec<Vertex>,
    v: Vec<Vertex>,
}

impl Labeling {
    pub fn new(u: Vec<Vertex>, v: Vec<Vertex>) -> Self {
        Labeling { u, v }
    }

    pub fn u(&self) -> &[Vertex] {
        &self.u
    }

    pub fn v(&self) -> &[Vertex] {
        &self.v
    }
}

/// A full decomposition of `AQ_n`: the `n - 1` spanning trees, the leftover
/// tree, and the labeling. Edge lists are canonical and sorted, so equal
/// decompositions are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    n: u32,
    trees: Vec<Vec<Edge>>,
    leftover: Vec<Edge>,
    labeling: Labeling,
}

impl Decomposition {
    /// Assembles a decomposition without validating it; pair with
    /// [`crate::verify::verify_all`].
    pub fn from_parts(
        n: u32,
        trees: Vec<Vec<Edge>>,
        leftover: Vec<Edge>,
        labeling: Labeling,
    ) -> Self {
        Decomposition {
            n,
            trees,
            leftover,
            labeling,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn trees(&self) -> &[Vec<Edge>] {
        &self.trees
    }

    pub fn leftover(&self) -> &[Edge] {
        &self.leftover
    }

    pub fn labeling(&self) -> &Labeling {
        &self.labeling
    }
}

// The n = 3 base case. Edge lists for the two spanning trees and the
// leftover tree of AQ_3; the leftover spans every vertex except 100.
const BASE_TREE_1: [(u32, u32); 7] = [
    (0b000, 0b010),
    (0b010, 0b011),
    (0b010, 0b110),
    (0b110, 0b101),
    (0b011, 0b111),
    (0b000, 0b100),
    (0b001, 0b101),
];

const BASE_TREE_2: [(u32, u32); 7] = [
    (0b000, 0b001),
    (0b001, 0b011),
    (0b001, 0b010),
    (0b011, 0b100),
    (0b100, 0b110),
    (0b100, 0b101),
    (0b100, 0b111),
];

const BASE_LEFTOVER: [(u32, u32); 6] = [
    (0b101, 0b111),
    (0b110, 0b111),
    (0b000, 0b111),
    (0b001, 0b110),
    (0b010, 0b101),
    (0b000, 0b011),
];

// Base labeling: v_4 = 100 is forced (the one vertex missing from the
// leftover tree); the remaining slots are the lexicographically least
// assignment with v_1 internal in T_1 and v_2 internal in T_2.
const BASE_V: [u32; 4] = [0b000, 0b001, 0b010, 0b100];
const BASE_U: [u32; 4] = [0b011, 0b101, 0b110, 0b111];

fn edge_list(pairs: &[(u32, u32)]) -> Vec<Edge> {
    let mut edges: Vec<Edge> = pairs
        .iter()
        .map(|&(a, b)| Edge::new(Vertex(a), Vertex(b)))
        .collect();
    edges.sort_unstable();
    edges
}

/// The fixed decomposition of `AQ_3`: two edge-disjoint spanning trees and a
/// 6-edge leftover tree on 7 vertices. Panics if the transcribed edge sets
/// ever fail verification.
pub fn base_decomposition() -> Decomposition {
    let d = Decomposition {
        n: 3,
        trees: vec![edge_list(&BASE_TREE_1), edge_list(&BASE_TREE_2)],
        leftover: edge_list(&BASE_LEFTOVER),
        labeling: Labeling {
            u: BASE_U.iter().map(|&x| Vertex(x)).collect(),
            v: BASE_V.iter().map(|&x| Vertex(x)).collect(),
        },
    };
    let g = build_aq(3).expect("AQ_3 is always buildable");
    let report = verify::verify_all(&g, &d).expect("dimensions match");
    assert!(
        report.pass,
        "base decomposition is inconsistent: {:?}",
        report.failures()
    );
    d
}

/// Lifts a decomposition of `AQ_n` to one of `AQ_{n+1}`.
///
/// Writing `0.x` / `1.x` for the copy-0 / copy-1 images of vertex `x`, the
/// new parts are:
///
/// 1. `T'_i = 0.T_i ∪ 1.T_i ∪ {<0.v_i, 1.v_i>}` for `i <= n - 2`;
/// 2. `T'_{n-1} = 0.T_{n-1}` plus all `2^n` complement cross edges;
/// 3. `T'_n = 1.T_{n-1} ∪ {<0.v_i, 1.v_i> : n <= i <= 2^(n-1)} ∪ 0.T_n`;
/// 4. leftover `T'_{n+1} = 1.T_n ∪ {<0.v_{n-1}, 1.v_{n-1}>}
///    ∪ {<0.u_i, 1.u_i> : all i}`.
///
/// The relabeling keeps both inductive premises: all copies of the old `u`s
/// become the new `u`s; `v'_i = 1.v_i` for `i <= n - 2`,
/// `v'_{n-1} = 0.v_{n-1}`, `v'_n = 1.v_{n-1}`, `v'_{n+1} = 1.v_n`, and the
/// remaining slots take the vertices outside the new leftover tree in
/// ascending order.
pub fn extend(d: &Decomposition) -> Result<Decomposition> {
    let n = d.n();
    let m = n + 1;
    let g_in = build_aq_capped(n, n)?;
    let report = verify::verify_all(&g_in, d)?;
    if !report.pass {
        return Err(Error::VerificationFailed(
            report.first_failure().unwrap_or_default(),
        ));
    }

    let nn = n as usize;
    let half = 1usize << (nn - 1);
    let msb = 1u32 << n;
    let lift = |edges: &[Edge], copy: u32| -> Vec<Edge> {
        let bit = copy << n;
        edges
            .iter()
            .map(|e| Edge::new(Vertex(e.a().0 | bit), Vertex(e.b().0 | bit)))
            .collect()
    };
    let cross = |x: Vertex| Edge::new(x, Vertex(x.0 | msb));
    let c0 = |x: Vertex| x;
    let c1 = |x: Vertex| Vertex(x.0 | msb);
    let us = d.labeling().u();
    let vs = d.labeling().v();

    let mut trees = Vec::with_capacity(nn);

    // Rule 1: both copies of T_i joined by the v_i hypercube cross edge.
    for (i, &vi) in vs.iter().enumerate().take(nn - 2) {
        let mut tree = lift(&d.trees[i], 0);
        tree.extend(lift(&d.trees[i], 1));
        tree.push(cross(vi));
        tree.sort_unstable();
        trees.push(tree);
    }

    // Rule 2: copy 0 of T_{n-1} plus every complement cross edge.
    {
        let mut tree = lift(&d.trees[nn - 2], 0);
        let full = (1u32 << m) - 1;
        for x in 0..msb {
            tree.push(Edge::new(Vertex(x), Vertex(x ^ full)));
        }
        tree.sort_unstable();
        trees.push(tree);
    }

    // Rule 3: copy 1 of T_{n-1}, the v_i cross edges for i >= n, and copy 0
    // of the leftover tree (which hangs off the v_n cross edge).
    {
        let mut tree = lift(&d.trees[nn - 2], 1);
        for &vi in &vs[nn - 1..half] {
            tree.push(cross(vi));
        }
        tree.extend(lift(&d.leftover, 0));
        tree.sort_unstable();
        trees.push(tree);
    }

    // Rule 4: the new leftover tree.
    let mut leftover = lift(&d.leftover, 1);
    leftover.push(cross(vs[nn - 2]));
    for &ui in us {
        leftover.push(cross(ui));
    }
    leftover.sort_unstable();

    // Rule 5: the relabeling.
    let u2: Vec<Vertex> = us.iter().map(|&x| c0(x)).chain(us.iter().map(|&x| c1(x))).collect();
    let mut v2: Vec<Vertex> = Vec::with_capacity(2 * half);
    for &vi in &vs[..nn - 2] {
        v2.push(c1(vi));
    }
    v2.push(c0(vs[nn - 2]));
    v2.push(c1(vs[nn - 2]));
    v2.push(c1(vs[nn - 1]));
    let mut rest: Vec<Vertex> = (0..half)
        .filter(|&i| i != nn - 2)
        .map(|i| c0(vs[i]))
        .chain(vs[nn..half].iter().map(|&x| c1(x)))
        .collect();
    rest.sort_unstable();
    v2.extend(rest);

    let out = Decomposition {
        n: m,
        trees,
        leftover,
        labeling: Labeling { u: u2, v: v2 },
    };
    let g_out = build_aq_capped(m, m).expect("dimension already validated");
    let report = verify::verify_all(&g_out, &out).expect("dimensions match");
    assert!(
        report.pass,
        "extension to dimension {m} produced an invalid decomposition: {:?}",
        report.failures()
    );
    Ok(out)
}

/// Builds the verified decomposition of `AQ_n` (`n >= 3`): the base case
/// followed by `n - 3` extension steps. Deterministic.
pub fn build(n: u32) -> Result<Decomposition> {
    build_capped(n, DEFAULT_MAX_DIMENSION)
}

/// [`build`] with an explicit dimension cap.
pub fn build_capped(n: u32, max_dimension: u32) -> Result<Decomposition> {
    if n < 3 {
        return Err(Error::DimensionTooSmall { got: n, min: 3 });
    }
    if n > max_dimension {
        return Err(Error::DimensionTooLarge {
            got: n,
            max: max_dimension,
        });
    }
    let mut d = base_decomposition();
    while d.n < n {
        d = extend(&d)?;
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn v(x: u32) -> Vertex {
        Vertex(x)
    }

    fn e(a: u32, b: u32) -> Edge {
        Edge::new(v(a), v(b))
    }

    #[test]
    fn base_matches_golden_sets() {
        let d = base_decomposition();
        assert_eq!(d.n(), 3);
        assert_eq!(d.trees().len(), 2);
        assert_eq!(d.trees()[0], edge_list(&BASE_TREE_1));
        assert_eq!(d.trees()[1], edge_list(&BASE_TREE_2));
        assert_eq!(d.leftover(), edge_list(&BASE_LEFTOVER));
        assert_eq!(
            d.labeling().v(),
            &[v(0b000), v(0b001), v(0b010), v(0b100)]
        );
        assert_eq!(
            d.labeling().u(),
            &[v(0b011), v(0b101), v(0b110), v(0b111)]
        );
    }

    #[test]
    fn base_leftover_is_complement_of_trees() {
        let g = build_aq(3).unwrap();
        let d = base_decomposition();
        let used: BTreeSet<Edge> = d.trees().iter().flatten().copied().collect();
        let rest: Vec<Edge> = g
            .edges()
            .iter()
            .copied()
            .filter(|edge| !used.contains(edge))
            .collect();
        assert_eq!(d.leftover(), rest.as_slice());
    }

    #[test]
    fn extend_base_sizes() {
        let d4 = extend(&base_decomposition()).unwrap();
        assert_eq!(d4.n(), 4);
        assert_eq!(d4.trees().len(), 3);
        for tree in d4.trees() {
            assert_eq!(tree.len(), 15);
        }
        assert_eq!(d4.leftover().len(), 11);
        let support: BTreeSet<Vertex> = d4
            .leftover()
            .iter()
            .flat_map(|edge| [edge.a(), edge.b()])
            .collect();
        assert_eq!(support.len(), 12);
    }

    #[test]
    fn extend_base_complement_cross_edges() {
        let d4 = extend(&base_decomposition()).unwrap();
        // Rule 2 puts all 8 complement cross edges of AQ_4 into the
        // second-to-last tree, which at n = 4 is the second tree.
        for x in 0u32..8 {
            assert!(d4.trees()[1].contains(&e(x, x ^ 0b1111)));
        }
    }

    #[test]
    fn extend_base_leftover_cross_edges() {
        let d4 = extend(&base_decomposition()).unwrap();
        for u in [0b011u32, 0b101, 0b110, 0b111] {
            assert!(d4.leftover().contains(&e(u, u | 0b1000)));
        }
        // v_2 = 001 is v_{n-1} at n = 3.
        assert!(d4.leftover().contains(&e(0b0001, 0b1001)));
    }

    #[test]
    fn extend_preserves_copy_image() {
        let d4 = build(4).unwrap();
        let d5 = extend(&d4).unwrap();
        for i in 0..2 {
            let lifted: BTreeSet<Edge> = d4.trees()[i]
                .iter()
                .map(|edge| e(edge.a().0 | 0b10000, edge.b().0 | 0b10000))
                .collect();
            let copy1: BTreeSet<Edge> = d5.trees()[i]
                .iter()
                .copied()
                .filter(|edge| edge.a().0 >= 0b10000)
                .collect();
            assert_eq!(copy1, lifted, "tree {i}");
        }
    }

    #[test]
    fn build_sizes() {
        let d3 = build(3).unwrap();
        assert_eq!(d3.trees().len(), 2);
        assert!(d3.trees().iter().all(|t| t.len() == 7));
        assert_eq!(d3.leftover().len(), 6);

        let d5 = build(5).unwrap();
        assert_eq!(d5.trees().len(), 4);
        assert!(d5.trees().iter().all(|t| t.len() == 31));
        assert_eq!(d5.leftover().len(), 20);
        let support: BTreeSet<Vertex> = d5
            .leftover()
            .iter()
            .flat_map(|edge| [edge.a(), edge.b()])
            .collect();
        assert_eq!(support.len(), 21);
    }

    #[test]
    fn build_rejects_bad_dimensions() {
        assert!(matches!(build(2), Err(Error::DimensionTooSmall { .. })));
        assert!(matches!(build(30), Err(Error::DimensionTooLarge { .. })));
    }

    #[test]
    fn build_is_deterministic() {
        assert_eq!(build(6).unwrap(), build(6).unwrap());
    }

    #[test]
    fn edge_accounting_per_step() {
        for n in 3..=8u32 {
            let d = build(n).unwrap();
            let tree_edges: usize = d.trees().iter().map(Vec::len).sum();
            let total = tree_edges + d.leftover().len();
            assert_eq!(total, (2 * n as usize - 1) << (n - 1));
        }
    }
}
