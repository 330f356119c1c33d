//! Independent verification of a decomposition.
//!
//! Every check here works from graph primitives only (disjoint-set union,
//! breadth-first search, counting); nothing trusts how the decomposition was
//! produced. Verdicts carry the first counterexample edge or vertex so a
//! failure is debuggable.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::builder::Decomposition;
use crate::graph::{AugmentedCube, Edge, Vertex};
use crate::par;
use crate::{Error, Result};

/// Disjoint-set union with path halving and union by rank.
pub(crate) struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len as u32).collect(),
            rank: vec![0; len],
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grandparent = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grandparent;
            x = grandparent;
        }
        x
    }

    /// Returns false when both elements were already in the same set.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra as usize].cmp(&self.rank[rb as usize]) {
            std::cmp::Ordering::Less => self.parent[ra as usize] = rb,
            std::cmp::Ordering::Greater => self.parent[rb as usize] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb as usize] = ra;
                self.rank[ra as usize] += 1;
            }
        }
        true
    }
}

/// Verdict of [`check_spanning_tree`].
#[derive(Clone, Debug)]
pub struct SpanningTreeVerdict {
    pub edge_count: usize,
    pub expected_edge_count: usize,
    pub foreign_edge: Option<Edge>,
    pub cycle_edge: Option<Edge>,
    pub unreached_vertex: Option<Vertex>,
    pub pass: bool,
}

/// Passes iff the edge set is a spanning tree of `g`: `2^n - 1` edges of the
/// graph, no cycle, every vertex reached.
pub fn check_spanning_tree(g: &AugmentedCube, edges: &[Edge]) -> SpanningTreeVerdict {
    let count = g.vertex_count() as usize;
    let expected = count - 1;
    let mut uf = UnionFind::new(count);
    let mut foreign = None;
    let mut cycle = None;
    for &e in edges {
        if !g.contains_edge(e) {
            foreign.get_or_insert(e);
            if !g.contains_vertex(e.a()) || !g.contains_vertex(e.b()) {
                continue;
            }
        }
        if !uf.union(e.a().0, e.b().0) {
            cycle.get_or_insert(e);
        }
    }
    let root = uf.find(0);
    let unreached = (1..count as u32).map(Vertex).find(|v| uf.find(v.0) != root);
    let pass =
        edges.len() == expected && foreign.is_none() && cycle.is_none() && unreached.is_none();
    SpanningTreeVerdict {
        edge_count: edges.len(),
        expected_edge_count: expected,
        foreign_edge: foreign,
        cycle_edge: cycle,
        unreached_vertex: unreached,
        pass,
    }
}

/// Verdict of [`check_disjoint`]: the first edge shared by two trees, if any.
#[derive(Clone, Debug)]
pub struct DisjointVerdict {
    pub collision: Option<(usize, usize, Edge)>,
    pub pass: bool,
}

/// Passes iff all pairwise intersections of the edge sets are empty.
pub fn check_disjoint(trees: &[Vec<Edge>]) -> DisjointVerdict {
    let mut owner: HashMap<Edge, usize> = HashMap::new();
    for (i, tree) in trees.iter().enumerate() {
        for &e in tree {
            if let Some(&j) = owner.get(&e) {
                return DisjointVerdict {
                    collision: Some((j, i, e)),
                    pass: false,
                };
            }
            owner.insert(e, i);
        }
    }
    DisjointVerdict {
        collision: None,
        pass: true,
    }
}

/// Verdict of [`check_partition`].
#[derive(Clone, Debug)]
pub struct PartitionVerdict {
    /// Graph edges covered by no part (first few).
    pub uncovered: Vec<Edge>,
    /// Edges claimed by more than one part (first few).
    pub doubly_covered: Vec<Edge>,
    /// Claimed edges that are not edges of the graph (first few).
    pub foreign: Vec<Edge>,
    pub leftover_size: usize,
    pub expected_leftover_size: usize,
    pub pass: bool,
}

const REPORT_CAP: usize = 8;

/// Passes iff the trees plus the leftover cover every edge of `g` exactly
/// once and the leftover has exactly `2^(n-1) + n - 1` edges.
pub fn check_partition(g: &AugmentedCube, d: &Decomposition) -> PartitionVerdict {
    let mut counts = vec![0u8; g.edge_index_space()];
    let mut doubly = Vec::new();
    let mut foreign = Vec::new();
    let parts = d
        .trees()
        .iter()
        .map(|t| t.as_slice())
        .chain(std::iter::once(d.leftover()));
    for part in parts {
        for &e in part {
            match g.edge_index(e) {
                Some(idx) => {
                    counts[idx] = counts[idx].saturating_add(1);
                    if counts[idx] == 2 && doubly.len() < REPORT_CAP {
                        doubly.push(e);
                    }
                }
                None => {
                    if foreign.len() < REPORT_CAP {
                        foreign.push(e);
                    }
                }
            }
        }
    }
    let mut uncovered = Vec::new();
    for &e in g.edges() {
        let idx = g.edge_index(e).expect("graph edge");
        if counts[idx] == 0 && uncovered.len() < REPORT_CAP {
            uncovered.push(e);
        }
    }
    let n = d.n();
    let expected_leftover = (1usize << (n - 1)) + n as usize - 1;
    let pass = uncovered.is_empty()
        && doubly.is_empty()
        && foreign.is_empty()
        && d.leftover().len() == expected_leftover;
    PartitionVerdict {
        uncovered,
        doubly_covered: doubly,
        foreign,
        leftover_size: d.leftover().len(),
        expected_leftover_size: expected_leftover,
        pass,
    }
}

/// Verdict of [`check_leftover`].
#[derive(Clone, Debug)]
pub struct LeftoverVerdict {
    pub support_size: usize,
    pub expected_support_size: usize,
    /// Expected support vertices the leftover never touches (first few).
    pub missing: Vec<Vertex>,
    /// Touched vertices outside the expected support (first few).
    pub foreign: Vec<Vertex>,
    pub cycle_edge: Option<Edge>,
    pub connected: bool,
    pub pass: bool,
}

/// Passes iff the leftover is a tree spanning exactly
/// `{u_1..u_{2^(n-1)}} ∪ {v_1..v_n}` and touching no other vertex.
pub fn check_leftover(d: &Decomposition) -> LeftoverVerdict {
    let n = d.n() as usize;
    let expected: BTreeSet<Vertex> = d
        .labeling()
        .u()
        .iter()
        .chain(d.labeling().v().iter().take(n))
        .copied()
        .collect();
    let support: BTreeSet<Vertex> = d
        .leftover()
        .iter()
        .flat_map(|e| [e.a(), e.b()])
        .collect();

    let missing: Vec<Vertex> = expected
        .difference(&support)
        .take(REPORT_CAP)
        .copied()
        .collect();
    let foreign: Vec<Vertex> = support
        .difference(&expected)
        .take(REPORT_CAP)
        .copied()
        .collect();

    // Acyclicity and connectivity over the support.
    let index: HashMap<Vertex, u32> = support
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u32))
        .collect();
    let mut uf = UnionFind::new(support.len());
    let mut cycle = None;
    let mut components = support.len();
    for &e in d.leftover() {
        let (a, b) = (index[&e.a()], index[&e.b()]);
        if uf.union(a, b) {
            components -= 1;
        } else {
            cycle.get_or_insert(e);
        }
    }
    let connected = components <= 1;

    let pass = missing.is_empty()
        && foreign.is_empty()
        && cycle.is_none()
        && connected
        && support.len() == expected.len();
    LeftoverVerdict {
        support_size: support.len(),
        expected_support_size: expected.len(),
        missing,
        foreign,
        cycle_edge: cycle,
        connected,
        pass,
    }
}

/// Verdict of [`check_internal_vertices`].
#[derive(Clone, Debug)]
pub struct InternalityVerdict {
    /// `(tree index, labeled vertex, observed degree)` for each violation.
    pub failures: Vec<(usize, Vertex, usize)>,
    pub pass: bool,
}

/// Passes iff `v_i` has degree >= 2 in `T_i` for every `1 <= i <= n-1`
/// (indices 0-based in the verdict).
pub fn check_internal_vertices(d: &Decomposition) -> InternalityVerdict {
    let mut failures = Vec::new();
    for (i, tree) in d.trees().iter().enumerate() {
        let vi = d.labeling().v()[i];
        let degree = tree
            .iter()
            .filter(|e| e.a() == vi || e.b() == vi)
            .count();
        if degree < 2 {
            failures.push((i, vi, degree));
        }
    }
    InternalityVerdict {
        pass: failures.is_empty(),
        failures,
    }
}

/// The unique path between two distinct vertices of a tree, as an edge
/// sequence.
pub fn tree_path(tree: &[Edge], a: Vertex, b: Vertex) -> Result<Vec<Edge>> {
    if a == b {
        return Err(Error::DegeneratePath);
    }
    let mut adjacency: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    for &e in tree {
        adjacency.entry(e.a()).or_default().push(e.b());
        adjacency.entry(e.b()).or_default().push(e.a());
    }
    if !adjacency.contains_key(&a) {
        return Err(Error::VertexNotInTree(a.0));
    }
    if !adjacency.contains_key(&b) {
        return Err(Error::VertexNotInTree(b.0));
    }
    let mut parent: HashMap<Vertex, Vertex> = HashMap::new();
    let mut queue = VecDeque::from([a]);
    parent.insert(a, a);
    while let Some(x) = queue.pop_front() {
        if x == b {
            break;
        }
        for &y in &adjacency[&x] {
            parent.entry(y).or_insert_with(|| {
                queue.push_back(y);
                x
            });
        }
    }
    if !parent.contains_key(&b) {
        return Err(Error::NoTreePath);
    }
    let mut path = Vec::new();
    let mut x = b;
    while x != a {
        let p = parent[&x];
        path.push(Edge::new(p, x));
        x = p;
    }
    path.reverse();
    Ok(path)
}

/// Upper bound on the number of edge-disjoint spanning trees from the edge
/// count alone: `floor(|E| / (|V| - 1))`, which is `n - 1` for all `n >= 3`.
pub fn max_edst_upper_bound(n: u32) -> Result<u64> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { got: n, min: 2 });
    }
    if n > 63 {
        return Err(Error::DimensionTooLarge { got: n, max: 63 });
    }
    let edges = (2 * n as u64 - 1) << (n - 1);
    Ok(edges / ((1u64 << n) - 1))
}

/// Aggregated verdicts for every property claimed of a decomposition.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub n: u32,
    pub trees: Vec<SpanningTreeVerdict>,
    pub disjoint: DisjointVerdict,
    pub partition: PartitionVerdict,
    pub leftover: LeftoverVerdict,
    pub internality: InternalityVerdict,
    pub tree_count: usize,
    pub expected_tree_count: usize,
    pub pass: bool,
}

impl VerificationReport {
    /// Human-readable description of every failing sub-check.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, t) in self.trees.iter().enumerate() {
            if !t.pass {
                out.push(format!(
                    "tree {}: {} edges (expected {}), foreign {:?}, cycle {:?}, unreached {:?}",
                    i + 1,
                    t.edge_count,
                    t.expected_edge_count,
                    t.foreign_edge,
                    t.cycle_edge,
                    t.unreached_vertex
                ));
            }
        }
        if let Some((i, j, e)) = self.disjoint.collision {
            out.push(format!("trees {} and {} share edge {e:?}", i + 1, j + 1));
        }
        if !self.partition.pass {
            out.push(format!(
                "partition: uncovered {:?}, doubly covered {:?}, foreign {:?}, leftover size {} (expected {})",
                self.partition.uncovered,
                self.partition.doubly_covered,
                self.partition.foreign,
                self.partition.leftover_size,
                self.partition.expected_leftover_size
            ));
        }
        if !self.leftover.pass {
            out.push(format!(
                "leftover: support {} (expected {}), missing {:?}, foreign {:?}, cycle {:?}, connected {}",
                self.leftover.support_size,
                self.leftover.expected_support_size,
                self.leftover.missing,
                self.leftover.foreign,
                self.leftover.cycle_edge,
                self.leftover.connected
            ));
        }
        for &(i, v, deg) in &self.internality.failures {
            out.push(format!(
                "internality: v_{} = {:#b} has degree {} < 2 in tree {}",
                i + 1,
                v.0,
                deg,
                i + 1
            ));
        }
        if self.tree_count != self.expected_tree_count {
            out.push(format!(
                "tree count {} differs from the optimum {}",
                self.tree_count, self.expected_tree_count
            ));
        }
        out
    }

    pub fn first_failure(&self) -> Option<String> {
        self.failures().into_iter().next()
    }
}

/// Runs every check; passes iff each passes and the number of trees equals
/// the edge-count optimum `n - 1`.
pub fn verify_all(g: &AugmentedCube, d: &Decomposition) -> Result<VerificationReport> {
    if g.n() != d.n() {
        return Err(Error::DimensionMismatch {
            graph: g.n(),
            decomposition: d.n(),
        });
    }
    let trees = par::map_collect(d.trees(), |tree| check_spanning_tree(g, tree));
    let disjoint = check_disjoint(d.trees());
    let partition = check_partition(g, d);
    let leftover = check_leftover(d);
    let internality = check_internal_vertices(d);
    let expected_tree_count = max_edst_upper_bound(d.n())? as usize;
    let tree_count = d.trees().len();
    let pass = trees.iter().all(|t| t.pass)
        && disjoint.pass
        && partition.pass
        && leftover.pass
        && internality.pass
        && tree_count == expected_tree_count
        && tree_count == d.n() as usize - 1;
    Ok(VerificationReport {
        n: d.n(),
        trees,
        disjoint,
        partition,
        leftover,
        internality,
        tree_count,
        expected_tree_count,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{base_decomposition, build, Decomposition, Labeling};
    use crate::graph::build_aq;

    fn v(x: u32) -> Vertex {
        Vertex(x)
    }

    fn e(a: u32, b: u32) -> Edge {
        Edge::new(v(a), v(b))
    }

    #[test]
    fn golden_tree_is_spanning() {
        let g = build_aq(3).unwrap();
        let d = base_decomposition();
        assert!(check_spanning_tree(&g, &d.trees()[0]).pass);
    }

    #[test]
    fn removing_a_leaf_edge_disconnects() {
        let g = build_aq(3).unwrap();
        let d = base_decomposition();
        let pruned: Vec<Edge> = d.trees()[0]
            .iter()
            .copied()
            .filter(|&edge| edge != e(0b000, 0b100))
            .collect();
        let verdict = check_spanning_tree(&g, &pruned);
        assert!(!verdict.pass);
        assert_eq!(verdict.unreached_vertex, Some(v(0b100)));
    }

    #[test]
    fn extra_edge_makes_a_cycle() {
        let g = build_aq(3).unwrap();
        let d = base_decomposition();
        let mut bloated = d.trees()[0].clone();
        bloated.push(e(0b000, 0b111));
        let verdict = check_spanning_tree(&g, &bloated);
        assert!(!verdict.pass);
        assert_eq!(verdict.edge_count, 8);
        assert!(verdict.cycle_edge.is_some());
    }

    #[test]
    fn foreign_edge_is_reported() {
        let g = build_aq(3).unwrap();
        let verdict = check_spanning_tree(&g, &[e(0b001, 0b100)]);
        assert_eq!(verdict.foreign_edge, Some(e(0b001, 0b100)));
        assert!(!verdict.pass);
    }

    #[test]
    fn disjointness_examples() {
        let d = base_decomposition();
        assert!(check_disjoint(d.trees()).pass);
        let same = vec![d.trees()[0].clone(), d.trees()[0].clone()];
        assert!(!check_disjoint(&same).pass);

        let mut t2 = d.trees()[1].clone();
        t2.push(e(0b000, 0b010));
        let planted = vec![d.trees()[0].clone(), t2];
        let verdict = check_disjoint(&planted);
        assert_eq!(verdict.collision, Some((0, 1, e(0b000, 0b010))));
    }

    #[test]
    fn partition_examples() {
        let g3 = build_aq(3).unwrap();
        let d3 = build(3).unwrap();
        let verdict = check_partition(&g3, &d3);
        assert!(verdict.pass);
        assert_eq!(verdict.leftover_size, 6);

        let g4 = build_aq(4).unwrap();
        let d4 = build(4).unwrap();
        let verdict = check_partition(&g4, &d4);
        assert!(verdict.pass);
        assert_eq!(verdict.leftover_size, 11);

        // Deleting a leftover edge leaves it uncovered.
        let dropped = d3.leftover()[0];
        let corrupted = Decomposition::from_parts(
            3,
            d3.trees().to_vec(),
            d3.leftover()[1..].to_vec(),
            d3.labeling().clone(),
        );
        let verdict = check_partition(&g3, &corrupted);
        assert!(!verdict.pass);
        assert_eq!(verdict.uncovered, vec![dropped]);
    }

    #[test]
    fn leftover_examples() {
        let d3 = build(3).unwrap();
        let verdict = check_leftover(&d3);
        assert!(verdict.pass);
        assert_eq!(verdict.support_size, 7);
        assert!(!d3
            .leftover()
            .iter()
            .any(|edge| edge.a() == v(0b100) || edge.b() == v(0b100)));

        let d4 = build(4).unwrap();
        let verdict = check_leftover(&d4);
        assert!(verdict.pass);
        assert_eq!(verdict.support_size, 12);

        // Injecting the v_1 cross edge touches a vertex outside the support.
        let v1 = d3.labeling().v()[0];
        let mut corrupted_leftover = d4.leftover().to_vec();
        corrupted_leftover.push(Edge::new(v1, Vertex(v1.0 | 0b1000)));
        let corrupted = Decomposition::from_parts(
            4,
            d4.trees().to_vec(),
            corrupted_leftover,
            d4.labeling().clone(),
        );
        assert!(!check_leftover(&corrupted).pass);
    }

    #[test]
    fn internality_examples() {
        let d = build(3).unwrap();
        assert!(check_internal_vertices(&d).pass);

        // 111 is a leaf of the first tree; swapping it in as v_1 must fail.
        let mut vs = d.labeling().v().to_vec();
        let mut us = d.labeling().u().to_vec();
        let slot = us.iter().position(|&x| x == v(0b111)).unwrap();
        us[slot] = vs[0];
        vs[0] = v(0b111);
        let relabeled = Decomposition::from_parts(
            3,
            d.trees().to_vec(),
            d.leftover().to_vec(),
            Labeling::new(us, vs),
        );
        let verdict = check_internal_vertices(&relabeled);
        assert!(!verdict.pass);
        assert_eq!(verdict.failures[0].0, 0);

        for n in 4..=8 {
            assert!(check_internal_vertices(&build(n).unwrap()).pass, "n = {n}");
        }
    }

    #[test]
    fn tree_path_examples() {
        let d = base_decomposition();
        let path = tree_path(&d.trees()[0], v(0b001), v(0b111)).unwrap();
        assert_eq!(
            path,
            vec![
                e(0b001, 0b101),
                e(0b101, 0b110),
                e(0b110, 0b010),
                e(0b010, 0b011),
                e(0b011, 0b111),
            ]
        );
        assert_eq!(
            tree_path(&d.trees()[1], v(0b000), v(0b001)).unwrap(),
            vec![e(0b000, 0b001)]
        );
        assert!(matches!(
            tree_path(&d.trees()[0], v(0), v(0)),
            Err(Error::DegeneratePath)
        ));
        assert!(matches!(
            tree_path(&d.trees()[0][..2], v(0b001), v(0b111)),
            Err(Error::VertexNotInTree(_))
        ));
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(max_edst_upper_bound(3).unwrap(), 2);
        assert_eq!(max_edst_upper_bound(5).unwrap(), 4);
        assert_eq!(max_edst_upper_bound(10).unwrap(), 9);
        assert!(matches!(
            max_edst_upper_bound(1),
            Err(Error::DimensionTooSmall { .. })
        ));
        for n in 3..=16u32 {
            assert_eq!(max_edst_upper_bound(n).unwrap(), n as u64 - 1);
        }
    }

    #[test]
    fn verify_all_passes_for_builds() {
        for n in 3..=8 {
            let g = build_aq(n).unwrap();
            let d = build(n).unwrap();
            assert!(verify_all(&g, &d).unwrap().pass, "n = {n}");
        }
    }

    #[test]
    fn verify_all_rejects_reordered_trees() {
        let d = base_decomposition();
        let swapped = Decomposition::from_parts(
            3,
            vec![d.trees()[1].clone(), d.trees()[0].clone()],
            d.leftover().to_vec(),
            d.labeling().clone(),
        );
        let g = build_aq(3).unwrap();
        let report = verify_all(&g, &swapped).unwrap();
        assert!(!report.pass);
        assert!(!report.internality.pass);
    }

    #[test]
    fn verify_all_dimension_mismatch() {
        let g = build_aq(4).unwrap();
        let d = base_decomposition();
        assert!(matches!(
            verify_all(&g, &d),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
