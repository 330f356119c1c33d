//! Edge-disjoint spanning trees in augmented cubes.
//!
//! The n-dimensional augmented cube `AQ_n` is a hypercube variant on `2^n`
//! bit-string vertices that is `(2n-1)`-regular: each recursion level joins
//! two half-cubes by *hypercube* edges (identical suffix) and *complement*
//! edges (fully complemented suffix). This crate constructs, for every
//! `n >= 3`, a family of `n-1` pairwise edge-disjoint spanning trees of
//! `AQ_n` — the maximum possible, since `|E| = (2n-1)*2^(n-1)` and each
//! spanning tree needs `2^n - 1` edges. The edges left over by the family
//! always form a tree on `2^(n-1) + n` vertices, which is exactly the
//! bookkeeping that drives the inductive construction.
//!
//! Modules:
//! - [`graph`]: the augmented cube itself and edge classification.
//! - [`builder`]: the decomposition (base case at n = 3 plus the inductive
//!   extension step).
//! - [`verify`]: independent checks of every claimed property, trusting only
//!   graph primitives.
//! - [`broadcast`]: broadcast delivery under link failures, exhaustive and
//!   Monte Carlo.
//! - [`io`]: JSON / DOT interchange.
//!
//! The `parallel` feature (on by default) runs the data-parallel inner loops
//! (per-tree verification, failure-subset enumeration, Monte Carlo trials,
//! all-sources BFS) on rayon; without it everything falls back to equivalent
//! sequential code with identical results.

pub mod broadcast;
pub mod builder;
mod error;
pub mod graph;
pub mod io;
mod par;
pub mod verify;

pub use error::{Error, Result};
