//! Partial partitions, potential functions and potential systems.
//!
//! A potential system on a partial partition is stored through a canonical
//! representative: on every block the potential is left-translated so that
//! the block's smallest vertex maps to the identity. Two potentials are in
//! the same class exactly when their canonical representatives agree.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{GroupElement, GroupTable};
use crate::bits::{Bits, VertexSet};
use crate::error::{Error, Result};

/// A partition of a subset (the support) of the ground set `0..ground`.
///
/// Blocks are nonempty, pairwise disjoint, and kept sorted by their smallest
/// element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialPartition {
    ground: usize,
    blocks: Vec<VertexSet>,
}

impl PartialPartition {
    pub fn new(ground: usize, blocks: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        if ground > Bits::CAPACITY {
            return Err(Error::InvalidPartition(format!("ground set of size {ground} is too large")));
        }
        let all = Bits::full(ground);
        let mut seen = Bits::EMPTY;
        let mut out = Vec::new();
        for b in blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if !b.is_subset(all) {
                return Err(Error::InvalidPartition(format!("block {b:?} leaves the ground set")));
            }
            if !b.is_disjoint(seen) {
                return Err(Error::InvalidPartition(format!("block {b:?} overlaps another block")));
            }
            seen = seen | b;
            out.push(b);
        }
        out.sort_by_key(|b| b.first());
        Ok(PartialPartition { ground, blocks: out })
    }

    /// Convenience constructor from explicit vertex lists.
    pub fn from_lists(ground: usize, blocks: &[&[usize]]) -> Result<Self> {
        let mut sets = Vec::with_capacity(blocks.len());
        for b in blocks {
            let mut s = Bits::EMPTY;
            for &v in *b {
                if v >= ground {
                    return Err(Error::InvalidPartition(format!("vertex {v} outside ground set")));
                }
                if s.contains(v) {
                    return Err(Error::InvalidPartition(format!("vertex {v} repeated")));
                }
                s.insert(v);
            }
            sets.push(s);
        }
        Self::new(ground, sets)
    }

    pub(crate) fn from_sorted_unchecked(ground: usize, mut blocks: Vec<VertexSet>) -> Self {
        blocks.sort_by_key(|b| b.first());
        PartialPartition { ground, blocks }
    }

    pub fn empty(ground: usize) -> Self {
        PartialPartition { ground, blocks: Vec::new() }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn support(&self) -> VertexSet {
        self.blocks.iter().fold(Bits::EMPTY, |acc, &b| acc | b)
    }

    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(v))
    }

    /// `self <= other`: every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &PartialPartition) -> Result<bool> {
        if self.ground != other.ground {
            return Err(Error::InvalidPartition(format!(
                "ground sets differ ({} vs {})",
                self.ground, other.ground
            )));
        }
        Ok(self.blocks.iter().all(|b| other.blocks.iter().any(|c| b.is_subset(*c))))
    }

    /// Every set partition of `set` (blocks in canonical order).
    pub fn set_partitions(ground: usize, set: VertexSet) -> Vec<PartialPartition> {
        let mut out = Vec::new();
        let mut blocks = Vec::new();
        set_partitions_rec(set, &mut blocks, &mut |bs| {
            out.push(PartialPartition::from_sorted_unchecked(ground, bs.to_vec()))
        });
        out
    }

    /// Every partial partition of `0..ground` whose support lies in `within`.
    pub fn all_partial(ground: usize, within: VertexSet) -> Vec<PartialPartition> {
        let mut out = Vec::new();
        for support in within.subsets() {
            out.extend(Self::set_partitions(ground, support));
        }
        out
    }
}

fn set_partitions_rec(rest: VertexSet, blocks: &mut Vec<VertexSet>, emit: &mut dyn FnMut(&[VertexSet])) {
    let Some(first) = rest.first() else {
        emit(blocks);
        return;
    };
    let others = rest.without(first);
    for companions in others.subsets() {
        blocks.push(companions.with(first));
        set_partitions_rec(others - companions, blocks, emit);
        blocks.pop();
    }
}

/// A function from a vertex subset (its domain) to the group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PotentialFunction {
    domain: VertexSet,
    /// Indexed by vertex; entries outside the domain are the identity.
    values: Vec<GroupElement>,
}

impl PotentialFunction {
    /// The identity potential on `domain`, over ground set `0..ground`.
    pub fn identity(ground: usize, domain: VertexSet) -> Self {
        PotentialFunction { domain, values: vec![GroupElement::IDENTITY; ground] }
    }

    pub fn from_pairs(ground: usize, pairs: impl IntoIterator<Item = (usize, GroupElement)>) -> Result<Self> {
        let mut f = PotentialFunction::identity(ground, Bits::EMPTY);
        for (v, g) in pairs {
            if v >= ground {
                return Err(Error::ForeignVertex(v));
            }
            f.set(v, g);
        }
        Ok(f)
    }

    pub fn ground(&self) -> usize {
        self.values.len()
    }

    pub fn domain(&self) -> VertexSet {
        self.domain
    }

    pub fn get(&self, v: usize) -> Option<GroupElement> {
        self.domain.contains(v).then(|| self.values[v])
    }

    pub fn set(&mut self, v: usize, g: GroupElement) {
        self.domain.insert(v);
        self.values[v] = g;
    }

    /// Global left translation `(g theta)(x) = g theta(x)`.
    pub fn left_translate(&self, group: &GroupTable, g: GroupElement) -> Self {
        let mut out = self.clone();
        for v in self.domain {
            out.values[v] = group.mul(g, self.values[v]);
        }
        out
    }

    #[inline]
    pub(crate) fn value(&self, v: usize) -> GroupElement {
        self.values[v]
    }
}

/// A potential system `[theta]_pi`: a partial partition with one potential
/// per block, held as its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PotentialSystem {
    partition: PartialPartition,
    /// Canonical representative; identity off the support and at each
    /// block's smallest vertex.
    rep: Vec<GroupElement>,
}

impl PotentialSystem {
    pub fn partition(&self) -> &PartialPartition {
        &self.partition
    }

    /// Representative value at `v` (identity off the support).
    pub fn rep(&self, v: usize) -> GroupElement {
        self.rep[v]
    }

    pub fn rep_values(&self) -> &[GroupElement] {
        &self.rep
    }

    /// The representative as a potential function on the support.
    pub fn to_function(&self) -> PotentialFunction {
        PotentialFunction { domain: self.partition.support(), values: self.rep.clone() }
    }

    pub fn empty(ground: usize) -> Self {
        PotentialSystem { partition: PartialPartition::empty(ground), rep: vec![GroupElement::IDENTITY; ground] }
    }

    /// Builds a system from already-normalized data, checking normalization.
    pub fn from_canonical(partition: PartialPartition, rep: Vec<GroupElement>) -> Result<Self> {
        if rep.len() != partition.ground() {
            return Err(Error::PotentialDomain(format!(
                "representative has {} entries for a ground set of {}",
                rep.len(),
                partition.ground()
            )));
        }
        let support = partition.support();
        for (v, g) in rep.iter().enumerate() {
            if !support.contains(v) && *g != GroupElement::IDENTITY {
                return Err(Error::PotentialDomain(format!("value given off the support at {v}")));
            }
        }
        for b in partition.blocks() {
            let root = b.first().expect("blocks are nonempty");
            if rep[root] != GroupElement::IDENTITY {
                return Err(Error::PotentialDomain(format!("block root {root} is not normalized")));
            }
        }
        Ok(PotentialSystem { partition, rep })
    }
}

/// `[theta]_pi` with the canonical representative.
pub fn canonicalize(group: &GroupTable, partition: &PartialPartition, theta: &PotentialFunction) -> Result<PotentialSystem> {
    if theta.ground() != partition.ground() {
        return Err(Error::PotentialDomain("ground sets differ".into()));
    }
    let support = partition.support();
    if !support.is_subset(theta.domain()) {
        let missing = (support - theta.domain()).first().unwrap_or(0);
        return Err(Error::PotentialDomain(format!("no value at vertex {missing}")));
    }
    let mut rep = vec![GroupElement::IDENTITY; partition.ground()];
    for b in partition.blocks() {
        let root = b.first().expect("blocks are nonempty");
        let shift = group.inv(theta.value(root));
        for v in *b {
            rep[v] = group.mul(shift, theta.value(v));
        }
    }
    Ok(PotentialSystem { partition: partition.clone(), rep })
}

/// `eta ~_pi theta`: on every block, `eta` is a left translate of `theta`.
pub fn same_class(
    group: &GroupTable,
    partition: &PartialPartition,
    theta: &PotentialFunction,
    eta: &PotentialFunction,
) -> Result<bool> {
    Ok(canonicalize(group, partition, theta)? == canonicalize(group, partition, eta)?)
}

/// `[theta]_tau` for `tau` refining the system's partition.
pub fn restrict(group: &GroupTable, system: &PotentialSystem, tau: &PartialPartition) -> Result<PotentialSystem> {
    if !tau.refines(&system.partition)? {
        return Err(Error::NotRefinement);
    }
    canonicalize(group, tau, &system.to_function())
}
