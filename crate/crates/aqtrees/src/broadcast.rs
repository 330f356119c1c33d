//! Broadcast delivery over the spanning trees under link failures.
//!
//! Failures are undirected edge removals; with `m` edge-disjoint spanning
//! trees, any failure set of size `m - 1` or less leaves at least one tree
//! intact by pigeonhole, so a broadcast replicated over all trees always
//! reaches every vertex. The simulator checks this exhaustively over all
//! failure subsets of a given size, or by seeded Monte Carlo sampling.
//!
//! Random sampling uses splitmix64 with one independently derived stream per
//! trial, so results are reproducible for a fixed seed regardless of trial
//! execution order (and of the `parallel` feature).

use std::collections::{BTreeSet, HashMap, VecDeque};

use itertools::Itertools;

use crate::builder::Decomposition;
use crate::graph::{build_aq_capped, AugmentedCube, Edge, Vertex};
use crate::par;
use crate::verify::UnionFind;
use crate::{Error, Result};

/// Default cap on `C(|E|, k)` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 5_000_000;

/// A set of failed (removed) links, validated against the graph.
#[derive(Clone, Debug, Default)]
pub struct FailureSet {
    failed: BTreeSet<Edge>,
}

impl FailureSet {
    pub fn empty() -> Self {
        FailureSet::default()
    }

    /// Builds a failure set, rejecting anything that is not an edge of `g`.
    pub fn new(g: &AugmentedCube, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut failed = BTreeSet::new();
        for e in edges {
            if !g.contains_edge(e) {
                return Err(Error::ForeignEdge(e));
            }
            failed.insert(e);
        }
        Ok(FailureSet { failed })
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.failed.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.failed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.failed.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.failed.iter().copied()
    }
}

/// Vertices reachable from `source` in `tree` after removing the failed
/// edges: the connected component of the source.
pub fn deliver(tree: &[Edge], source: Vertex, failed: &FailureSet) -> Result<BTreeSet<Vertex>> {
    let mut adjacency: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    let mut support = BTreeSet::new();
    for &e in tree {
        support.insert(e.a());
        support.insert(e.b());
        if !failed.contains(e) {
            adjacency.entry(e.a()).or_default().push(e.b());
            adjacency.entry(e.b()).or_default().push(e.a());
        }
    }
    if !support.contains(&source) {
        return Err(Error::VertexNotInTree(source.0));
    }
    let mut reached = BTreeSet::from([source]);
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        if let Some(next) = adjacency.get(&x) {
            for &y in next {
                if reached.insert(y) {
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(reached)
}

/// Delivery through one tree.
#[derive(Clone, Debug)]
pub struct TreeDelivery {
    pub reached: BTreeSet<Vertex>,
    /// True iff no failed edge belongs to the tree; an intact spanning tree
    /// reaches every vertex.
    pub intact: bool,
}

/// Outcome of broadcasting from one source over every tree.
#[derive(Clone, Debug)]
pub struct BroadcastOutcome {
    pub per_tree: Vec<TreeDelivery>,
    /// Some single tree reached all vertices.
    pub delivered: bool,
    /// The union of the surviving tree fragments reached all vertices.
    pub union_delivered: bool,
}

/// Runs [`deliver`] for every tree of the decomposition and aggregates the
/// outcome flags.
pub fn simulate(
    d: &Decomposition,
    source: Vertex,
    failed: &FailureSet,
) -> Result<BroadcastOutcome> {
    let all = 1u64 << d.n();
    if u64::from(source.0) >= all {
        return Err(Error::VertexOutOfRange {
            value: source.0,
            n: d.n(),
        });
    }
    let per_tree: Vec<TreeDelivery> = d
        .trees()
        .iter()
        .map(|tree| {
            let reached = deliver(tree, source, failed)?;
            let intact = tree.iter().all(|&e| !failed.contains(e));
            Ok(TreeDelivery { reached, intact })
        })
        .collect::<Result<_>>()?;
    let delivered = per_tree.iter().any(|t| t.reached.len() as u64 == all);
    let union: Vec<Edge> = d.trees().iter().flatten().copied().collect();
    let union_delivered = deliver(&union, source, failed)?.len() as u64 == all;
    Ok(BroadcastOutcome {
        per_tree,
        delivered,
        union_delivered,
    })
}

/// Result of exhaustively checking every failure subset of size `k`.
#[derive(Clone, Debug)]
pub struct FaultCheckReport {
    pub k: usize,
    pub subsets_checked: u64,
    pub sources_per_subset: u64,
    /// Every subset left at least one tree intact (delivery from every
    /// source; delivery over an intact spanning tree is source-independent).
    pub all_delivered: bool,
    pub undelivered_subsets: u64,
    /// Every subset left the union of tree fragments connected.
    pub all_union_delivered: bool,
    pub union_undelivered_subsets: u64,
    pub first_undelivered: Option<Vec<Edge>>,
}

fn binomial(n: usize, k: usize) -> Option<u64> {
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc.checked_mul((n - i) as u128)? / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Checks delivery for every `k`-subset of `E(AQ_n)` and every source, under
/// the default enumeration budget. Guaranteed to pass for `k <= n - 2`.
pub fn exhaustive_fault_check(d: &Decomposition, k: usize) -> Result<FaultCheckReport> {
    exhaustive_fault_check_with_budget(d, k, DEFAULT_ENUMERATION_BUDGET)
}

pub fn exhaustive_fault_check_with_budget(
    d: &Decomposition,
    k: usize,
    budget: u64,
) -> Result<FaultCheckReport> {
    let g = build_aq_capped(d.n(), d.n())?;
    let m = g.edge_count();
    if k > m {
        return Err(Error::TooManyFailures { k, edges: m });
    }
    let subsets = binomial(m, k).unwrap_or(u64::MAX);
    if subsets > budget {
        return Err(Error::EnumerationBudget {
            edges: m,
            k,
            subsets,
            budget,
        });
    }

    let ctx = FaultContext::new(&g, d);
    // Chunked so rayon can spread the work while the first counterexample
    // stays the first in enumeration order.
    let combos: Vec<Vec<usize>> = (0..m).combinations(k).collect();
    let outcomes = par::map_collect(&combos, |combo| ctx.judge(combo));

    let mut undelivered = 0u64;
    let mut union_undelivered = 0u64;
    let mut first = None;
    for (combo, (delivered, union_delivered)) in combos.iter().zip(&outcomes) {
        if !delivered {
            undelivered += 1;
            if first.is_none() {
                first = Some(combo.iter().map(|&i| g.edges()[i]).collect());
            }
        }
        if !union_delivered {
            union_undelivered += 1;
        }
    }
    Ok(FaultCheckReport {
        k,
        subsets_checked: combos.len() as u64,
        sources_per_subset: g.vertex_count(),
        all_delivered: undelivered == 0,
        undelivered_subsets: undelivered,
        all_union_delivered: union_undelivered == 0,
        union_undelivered_subsets: union_undelivered,
        first_undelivered: first,
    })
}

/// Shared lookup tables for judging failure subsets given as positions into
/// the graph's edge list.
struct FaultContext {
    /// Owning tree of each graph edge, `None` for leftover edges.
    owner: Vec<Option<u8>>,
    /// All tree edges as `(a, b, graph edge position)`.
    tree_edges: Vec<(u32, u32, usize)>,
    tree_count: u32,
    vertex_count: usize,
}

impl FaultContext {
    fn new(g: &AugmentedCube, d: &Decomposition) -> Self {
        let mut owner = vec![None; g.edge_count()];
        let mut tree_edges = Vec::new();
        for (t, tree) in d.trees().iter().enumerate() {
            for &e in tree {
                let pos = g
                    .edges()
                    .binary_search(&e)
                    .expect("tree edges are graph edges");
                owner[pos] = Some(t as u8);
                tree_edges.push((e.a().0, e.b().0, pos));
            }
        }
        FaultContext {
            owner,
            tree_edges,
            tree_count: d.trees().len() as u32,
            vertex_count: (1usize) << d.n(),
        }
    }

    /// Returns `(delivered, union_delivered)` for one failure subset.
    fn judge(&self, combo: &Vec<usize>) -> (bool, bool) {
        let mut hit: u32 = 0;
        for &pos in combo {
            if let Some(t) = self.owner[pos] {
                hit |= 1 << t;
            }
        }
        let full = (1u32 << self.tree_count) - 1;
        let delivered = hit != full;
        if delivered {
            // An intact spanning tree reaches everything on its own.
            return (true, true);
        }
        let mut uf = UnionFind::new(self.vertex_count);
        let mut components = self.vertex_count;
        for &(a, b, pos) in &self.tree_edges {
            if !combo.contains(&pos) && uf.union(a, b) {
                components -= 1;
            }
        }
        (false, components == 1)
    }
}

/// Reliability statistics from seeded Monte Carlo sampling.
#[derive(Clone, Debug)]
pub struct ReliabilityStats {
    pub k: usize,
    pub trials: u64,
    pub seed: u64,
    /// Trials where some single tree reached every vertex.
    pub delivered: u64,
    /// Trials with at least one intact tree (no failed edge of its own).
    pub intact_tree: u64,
    /// Trials where the union of surviving fragments stayed connected.
    pub union_delivered: u64,
    pub delivered_fraction: f64,
    pub intact_tree_fraction: f64,
    pub union_delivered_fraction: f64,
}

pub(crate) fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform `k`-subset of `0..m` by partial Fisher-Yates on a derived stream.
fn sample_failure_positions(m: usize, k: usize, mut state: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..m).collect();
    for i in 0..k {
        let j = i + (splitmix64(&mut state) as usize) % (m - i);
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool
}

/// One seeded sample of `k` distinct failed edges, using the same generator
/// as [`monte_carlo`].
pub fn sample_failures(g: &AugmentedCube, k: usize, seed: u64) -> Result<FailureSet> {
    let m = g.edge_count();
    if k > m {
        return Err(Error::TooManyFailures { k, edges: m });
    }
    let positions = sample_failure_positions(m, k, seed);
    FailureSet::new(g, positions.into_iter().map(|i| g.edges()[i]))
}

/// Samples `trials` failure subsets of size `k` uniformly and reports the
/// delivery fractions. Identical seeds give identical output.
pub fn monte_carlo(
    d: &Decomposition,
    k: usize,
    trials: u64,
    seed: u64,
) -> Result<ReliabilityStats> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let g = build_aq_capped(d.n(), d.n())?;
    let m = g.edge_count();
    if k > m {
        return Err(Error::TooManyFailures { k, edges: m });
    }
    let ctx = FaultContext::new(&g, d);
    let trial_ids: Vec<u64> = (0..trials).collect();
    let outcomes = par::map_collect(&trial_ids, |&t| {
        let stream = seed ^ (t.wrapping_add(1)).wrapping_mul(0xA076_1D64_78BD_642F);
        let combo = sample_failure_positions(m, k, stream);
        ctx.judge(&combo)
    });
    let delivered = outcomes.iter().filter(|&&(d, _)| d).count() as u64;
    let union_delivered = outcomes.iter().filter(|&&(_, u)| u).count() as u64;
    // Delivery through a single tree happens exactly when that tree is
    // intact, so the two counts coincide; both are reported.
    let intact = delivered;
    Ok(ReliabilityStats {
        k,
        trials,
        seed,
        delivered,
        intact_tree: intact,
        union_delivered,
        delivered_fraction: delivered as f64 / trials as f64,
        intact_tree_fraction: intact as f64 / trials as f64,
        union_delivered_fraction: union_delivered as f64 / trials as f64,
    })
}
