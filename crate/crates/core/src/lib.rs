//! Rhodes semilattices of gain graphs and biased graphs.
//!
//! The crate works at desk scale: graphs with at most 128 vertices and 128
//! edges, finite groups given by multiplication tables. Everything is pure
//! and allocation-only, so the crate is `no_std` with `alloc`.
//!
//! Module map:
//!
//! * [`algebra`]: finite groups as Cayley tables, subgroup enumeration.
//! * [`multigraph`]: graphs with loops and parallel edges, circles, thetas.
//! * [`gain`]: gain graphs, balance, potentials, group expansions, switching.
//! * [`bias`]: biased graphs with an explicit list of balanced circles.
//! * [`partition`]: partial partitions and potential systems.
//! * [`rhodes`]: the partition-potential and the graphic semilattices, the
//!   map between them, meets, and the isomorphism check.
//! * [`matroid`]: frame and lift ranks, closures, flats, and their lattices.
//! * [`latticekit`]: finite posets, the classic and semiclosed lattices,
//!   lattice probing and the classifiers for the `Z6` worked examples.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod bias;
pub mod bits;
mod error;
pub mod gain;
pub mod latticekit;
pub mod matroid;
pub mod multigraph;
pub mod partition;
pub mod rhodes;
mod unionfind;

pub use error::{Error, Result};

/// Scale guards for the exponential enumerations.
///
/// Every enumeration fails with [`Error::ScaleGuard`] instead of running away
/// when one of these is exceeded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of edges for circle and theta enumeration.
    pub max_edges: usize,
    /// Maximum number of circles produced by one enumeration.
    pub max_circles: usize,
    /// Maximum number of theta subgraphs produced by one enumeration.
    pub max_thetas: usize,
    /// Maximum number of vertices for semilattice and lattice enumeration.
    pub max_vertices: usize,
    /// Maximum number of edges for subset brute force (semiclosed lattice).
    pub max_brute_force_edges: usize,
    /// Maximum number of elements produced by a lattice enumeration.
    pub max_elements: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_edges: 40,
            max_circles: 200_000,
            max_thetas: 2_000_000,
            max_vertices: 8,
            max_brute_force_edges: 12,
            max_elements: 500_000,
        }
    }
}

impl Limits {
    /// Limits with every guard disabled.
    pub fn unbounded() -> Self {
        Limits {
            max_edges: usize::MAX,
            max_circles: usize::MAX,
            max_thetas: usize::MAX,
            max_vertices: usize::MAX,
            max_brute_force_edges: usize::MAX,
            max_elements: usize::MAX,
        }
    }

    /// All guards multiplied by `factor` (saturating).
    pub fn scaled(&self, factor: usize) -> Self {
        Limits {
            max_edges: self.max_edges.saturating_mul(factor),
            max_circles: self.max_circles.saturating_mul(factor),
            max_thetas: self.max_thetas.saturating_mul(factor),
            max_vertices: self.max_vertices.saturating_mul(factor),
            max_brute_force_edges: self.max_brute_force_edges.saturating_mul(factor),
            max_elements: self.max_elements.saturating_mul(factor),
        }
    }
}
