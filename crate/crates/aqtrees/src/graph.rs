//! The augmented cube `AQ_n` and its edge classification.
//!
//! Vertices are the `n`-bit strings `u_1 u_2 ... u_n`; `u_1` (the copy
//! selector of the outermost recursion) is stored as the most significant of
//! the `n` bits, so copy 0 of the top-level split is exactly the values below
//! `2^(n-1)`. Two vertices are adjacent iff their XOR is either a single bit
//! `2^(l-1)` (a hypercube edge of level `l`) or a full suffix `2^l - 1` with
//! `l >= 2` (a complement edge of level `l`). Level `l` is the recursion
//! depth that introduced the edge: its endpoints agree on the leading
//! `n - l` bits.

use std::collections::VecDeque;

use crate::par;
use crate::{Error, Result};

/// Default cap on the dimension; `|E| = (2n-1) * 2^(n-1)` grows quickly.
pub const DEFAULT_MAX_DIMENSION: u32 = 20;

/// A vertex of `AQ_n`, stored as the integer value of its bit label.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vertex(pub u32);

impl Vertex {
    /// The `n`-bit label, most significant bit first.
    pub fn bits(self, n: u32) -> String {
        format!("{:0width$b}", self.0, width = n as usize)
    }

    /// Parses a binary label. Length checks against the ambient dimension
    /// are the caller's job.
    pub fn from_bits(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > 32 || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidDocument(format!("malformed bit string {s:?}")));
        }
        Ok(Vertex(u32::from_str_radix(s, 2).expect("validated binary")))
    }
}

/// An undirected edge, canonicalized so the smaller endpoint comes first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    a: Vertex,
    b: Vertex,
}

impl Edge {
    pub fn new(x: Vertex, y: Vertex) -> Edge {
        assert_ne!(x, y, "edge endpoints must be distinct");
        if x < y {
            Edge { a: x, b: y }
        } else {
            Edge { a: y, b: x }
        }
    }

    pub fn a(self) -> Vertex {
        self.a
    }

    pub fn b(self) -> Vertex {
        self.b
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.a, self.b)
    }

    fn mask(self) -> u32 {
        self.a.0 ^ self.b.0
    }
}

/// Classification of an edge by kind and by the recursion level that
/// introduced it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeKind {
    /// Endpoints differ in exactly bit `n - l + 1` (1-indexed from the left).
    Hypercube { level: u32 },
    /// Endpoints differ in bit `n - l + 1` and in every later bit.
    Complement { level: u32 },
}

impl EdgeKind {
    pub fn level(self) -> u32 {
        match self {
            EdgeKind::Hypercube { level } | EdgeKind::Complement { level } => level,
        }
    }
}

/// Classifies an XOR mask, independent of dimension. The caller has already
/// checked both endpoints are in range, which bounds the level by `n`.
fn kind_of_mask(mask: u32) -> Option<EdgeKind> {
    if mask == 0 {
        None
    } else if mask.is_power_of_two() {
        Some(EdgeKind::Hypercube {
            level: mask.trailing_zeros() + 1,
        })
    } else if mask & (mask + 1) == 0 {
        // 2^l - 1 with l >= 2 (l = 1 is the power-of-two case above).
        Some(EdgeKind::Complement {
            level: (mask + 1).trailing_zeros(),
        })
    } else {
        None
    }
}

/// The vertex split and cross edges of the outermost recursion level.
#[derive(Clone, Debug)]
pub struct SplitCopies {
    pub copy0: Vec<Vertex>,
    pub copy1: Vec<Vertex>,
    pub cross_hypercube: Vec<Edge>,
    pub cross_complement: Vec<Edge>,
}

/// The augmented cube `AQ_n`: immutable once built, all queries read-only.
#[derive(Clone, Debug)]
pub struct AugmentedCube {
    n: u32,
    /// XOR masks defining adjacency, ascending. Doubles as the edge-class
    /// index for [`AugmentedCube::edge_index`].
    masks: Vec<u32>,
    /// All edges, canonical and sorted.
    edges: Vec<Edge>,
}

/// Builds `AQ_n` under the default dimension cap.
pub fn build_aq(n: u32) -> Result<AugmentedCube> {
    build_aq_capped(n, DEFAULT_MAX_DIMENSION)
}

/// Builds `AQ_n` with an explicit dimension cap.
pub fn build_aq_capped(n: u32, max_dimension: u32) -> Result<AugmentedCube> {
    if n == 0 {
        return Err(Error::DimensionTooSmall { got: 0, min: 1 });
    }
    if n > max_dimension || n > 31 {
        return Err(Error::DimensionTooLarge {
            got: n,
            max: max_dimension.min(31),
        });
    }
    let mut masks: Vec<u32> = (1..=n)
        .map(|l| 1u32 << (l - 1))
        .chain((2..=n).map(|l| (1u32 << l) - 1))
        .collect();
    masks.sort_unstable();

    let count = 1u32 << n;
    let mut edges = Vec::with_capacity(masks.len() << (n - 1).min(30));
    for x in 0..count {
        for &m in &masks {
            let y = x ^ m;
            if y > x {
                edges.push(Edge::new(Vertex(x), Vertex(y)));
            }
        }
    }
    edges.sort_unstable();
    Ok(AugmentedCube { n, masks, edges })
}

impl AugmentedCube {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertex_count(&self) -> u64 {
        1u64 << self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All edges, canonical and sorted.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Every edge with its classification.
    pub fn edge_kinds(&self) -> impl Iterator<Item = (Edge, EdgeKind)> + '_ {
        self.edges
            .iter()
            .map(|&e| (e, kind_of_mask(e.mask()).expect("stored edges are valid")))
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        (v.0 as u64) < self.vertex_count()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.contains_vertex(e.a())
            && self.contains_vertex(e.b())
            && self.masks.binary_search(&e.mask()).is_ok()
    }

    /// Degree of a vertex; `AQ_n` is `(2n-1)`-regular (1-regular at n = 1).
    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.masks.len())
    }

    /// Neighbors of a valid vertex, one per adjacency mask.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        debug_assert!(self.contains_vertex(v));
        self.masks.iter().map(move |&m| Vertex(v.0 ^ m))
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                value: v.0,
                n: self.n,
            })
        }
    }

    /// Returns the unique classification of the pair, or `None` when the
    /// vertices are not adjacent.
    pub fn classify_pair(&self, x: Vertex, y: Vertex) -> Result<Option<EdgeKind>> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Err(Error::IdenticalVertices);
        }
        Ok(kind_of_mask(x.0 ^ y.0))
    }

    /// Splits off the outermost recursion level: the two half-cube vertex
    /// sets and the `2^(n-1)` hypercube plus `2^(n-1)` complement cross edges.
    pub fn split_copies(&self) -> Result<SplitCopies> {
        if self.n < 2 {
            return Err(Error::NoSplit);
        }
        let half = 1u32 << (self.n - 1);
        let full = (1u32 << self.n) - 1;
        Ok(SplitCopies {
            copy0: (0..half).map(Vertex).collect(),
            copy1: (half..half * 2).map(Vertex).collect(),
            cross_hypercube: (0..half)
                .map(|x| Edge::new(Vertex(x), Vertex(x | half)))
                .collect(),
            cross_complement: (0..half)
                .map(|x| Edge::new(Vertex(x), Vertex(x ^ full)))
                .collect(),
        })
    }

    /// Exact diameter via breadth-first search from every source.
    pub fn diameter(&self) -> u32 {
        let sources: Vec<u32> = (0..self.vertex_count() as u32).collect();
        par::map_collect(&sources, |&s| self.eccentricity(s))
            .into_iter()
            .max()
            .expect("at least one vertex")
    }

    fn eccentricity(&self, source: u32) -> u32 {
        let count = self.vertex_count() as usize;
        let mut dist = vec![u32::MAX; count];
        let mut queue = VecDeque::new();
        dist[source as usize] = 0;
        queue.push_back(source);
        let mut max = 0;
        while let Some(x) = queue.pop_front() {
            let d = dist[x as usize];
            max = max.max(d);
            for &m in &self.masks {
                let y = (x ^ m) as usize;
                if dist[y] == u32::MAX {
                    dist[y] = d + 1;
                    queue.push_back(y as u32);
                }
            }
        }
        max
    }

    /// Dense index of an edge: class of its mask times `2^n` plus the smaller
    /// endpoint. Exactly half the slots of each class are inhabited.
    pub(crate) fn edge_index(&self, e: Edge) -> Option<usize> {
        if !self.contains_vertex(e.a()) || !self.contains_vertex(e.b()) {
            return None;
        }
        let class = self.masks.binary_search(&e.mask()).ok()?;
        Some((class << self.n) | e.a().0 as usize)
    }

    pub(crate) fn edge_index_space(&self) -> usize {
        self.masks.len() << self.n
    }
}

/// Partner of `x` across the level-`l` hypercube edge: bit `n - l + 1`
/// flipped. An involution.
pub fn hypercube_partner(n: u32, x: Vertex, level: u32) -> Result<Vertex> {
    check_partner_args(n, x, level, 1)?;
    Ok(Vertex(x.0 ^ (1u32 << (level - 1))))
}

/// Partner of `x` across the level-`l` complement edge: the trailing `l`
/// bits all flipped. An involution.
pub fn complement_partner(n: u32, x: Vertex, level: u32) -> Result<Vertex> {
    check_partner_args(n, x, level, 2)?;
    Ok(Vertex(x.0 ^ ((1u32 << level) - 1)))
}

fn check_partner_args(n: u32, x: Vertex, level: u32, min_level: u32) -> Result<()> {
    if n == 0 || n > 31 {
        return Err(Error::DimensionTooSmall { got: n, min: 1 });
    }
    if x.0 >= 1u32 << n {
        return Err(Error::VertexOutOfRange { value: x.0, n });
    }
    if level < min_level || level > n {
        return Err(Error::LevelOutOfRange {
            level,
            min: min_level,
            max: n,
        });
    }
    Ok(())
}
