//! Finite groups given by explicit multiplication tables.
//!
//! Elements are indices `0..order`; the identity is always index 0. Tables
//! are validated exhaustively (closure, identity, inverses, associativity)
//! up to [`ASSOCIATIVITY_CHECK_BOUND`]; larger tables are trusted.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest order for which associativity is checked and subgroups enumerated.
pub const ASSOCIATIVITY_CHECK_BOUND: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(u32);

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    label: String,
    order: usize,
    /// Row-major `order * order` products.
    table: Vec<u32>,
    inverse: Vec<u32>,
    /// Present when the table came from [`GroupTable::cyclic`].
    cyclic: Option<usize>,
}

impl GroupTable {
    /// The additive cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        let inverse = (0..n).map(|i| ((n - i) % n) as u32).collect();
        Ok(GroupTable { label: format!("Z{n}"), order: n, table, inverse, cyclic: Some(n) })
    }

    /// Direct product; element `(a, b)` has index `a * |H| + b`.
    pub fn direct_product(g: &GroupTable, h: &GroupTable) -> Self {
        let (m, n) = (g.order, h.order);
        let order = m * n;
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let a = g.table[(x / n) * m + y / n] as usize;
                let b = h.table[(x % n) * n + y % n] as usize;
                table.push((a * n + b) as u32);
            }
        }
        let inverse = (0..order)
            .map(|x| (g.inverse[x / n] as usize * n + h.inverse[x % n] as usize) as u32)
            .collect();
        GroupTable { label: format!("{}x{}", g.label, h.label), order, table, inverse, cyclic: None }
    }

    /// A user-supplied Cayley table. Row `i`, column `j` holds `i * j`; index
    /// 0 must be the identity.
    pub fn from_table(rows: &[Vec<usize>], label: impl Into<String>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!("row {i} has length {}, expected {order}", row.len())));
            }
            for &x in row {
                if x >= order {
                    return Err(Error::InvalidGroup(format!("entry {x} in row {i} is out of range")));
                }
                table.push(x as u32);
            }
        }
        for i in 0..order {
            if table[i] as usize != i || table[i * order] as usize != i {
                return Err(Error::InvalidGroup("index 0 is not a two-sided identity".into()));
            }
        }
        let mut inverse = Vec::with_capacity(order);
        for i in 0..order {
            let inv = (0..order).find(|&j| table[i * order + j] == 0 && table[j * order + i] == 0);
            match inv {
                Some(j) => inverse.push(j as u32),
                None => return Err(Error::InvalidGroup(format!("element {i} has no two-sided inverse"))),
            }
        }
        let group = GroupTable { label: label.into(), order, table, inverse, cyclic: None };
        if order <= ASSOCIATIVITY_CHECK_BOUND {
            group.check_associative()?;
        }
        Ok(group)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.table[a * n + b] as usize;
                for c in 0..n {
                    let bc = self.table[b * n + c] as usize;
                    if self.table[ab * n + c] != self.table[a * n + bc] {
                        return Err(Error::InvalidGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `Some(n)` when this is the table built by [`GroupTable::cyclic`].
    pub fn cyclic_order(&self) -> Option<usize> {
        self.cyclic
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    /// Checked conversion from an index.
    pub fn element(&self, index: usize) -> Result<GroupElement> {
        if index < self.order {
            Ok(GroupElement(index as u32))
        } else {
            Err(Error::ForeignElement { index, order: self.order })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order as u32).map(GroupElement)
    }

    /// Checked product `g h`.
    pub fn compose(&self, g: GroupElement, h: GroupElement) -> Result<GroupElement> {
        self.element(g.index())?;
        self.element(h.index())?;
        Ok(self.mul(g, h))
    }

    /// Unchecked product; panics on foreign elements.
    #[inline]
    pub fn mul(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        GroupElement(self.table[g.index() * self.order + h.index()])
    }

    #[inline]
    pub fn inv(&self, g: GroupElement) -> GroupElement {
        GroupElement(self.inverse[g.index()])
    }

    /// `g^{-1} h`.
    #[inline]
    pub fn ldiv(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        self.mul(self.inv(g), h)
    }

    /// Rows of the Cayley table, for serialization.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.iter().map(|&x| x as usize).collect()).collect()
    }

    /// Every subgroup, each as a sorted list of elements.
    ///
    /// Subgroups are the closed sets of "generated subgroup", so a breadth-first
    /// walk from the trivial subgroup that adjoins one element at a time and
    /// closes reaches all of them. Output is sorted by size, then
    /// lexicographically.
    pub fn subgroups(&self) -> Result<Vec<Vec<GroupElement>>> {
        crate::error::guard("group order", ASSOCIATIVITY_CHECK_BOUND, self.order)?;
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        let trivial = 1u64;
        seen.insert(trivial);
        let mut queue = alloc::vec![trivial];
        while let Some(h) = queue.pop() {
            for g in 0..self.order {
                if h >> g & 1 == 1 {
                    continue;
                }
                let closed = self.generated(h | 1 << g);
                if seen.insert(closed) {
                    queue.push(closed);
                }
            }
        }
        let mut out: Vec<Vec<GroupElement>> = seen
            .into_iter()
            .map(|m| (0..self.order).filter(|&i| m >> i & 1 == 1).map(|i| GroupElement(i as u32)).collect())
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// Subgroup generated by a mask of elements (order <= 64).
    fn generated(&self, mask: u64) -> u64 {
        let mut h = mask | 1;
        loop {
            let mut next = h;
            for a in 0..self.order {
                if h >> a & 1 == 0 {
                    continue;
                }
                next |= 1 << self.inverse[a];
                for b in 0..self.order {
                    if h >> b & 1 == 1 {
                        next |= 1 << self.table[a * self.order + b];
                    }
                }
            }
            if next == h {
                return h;
            }
            h = next;
        }
    }
}
