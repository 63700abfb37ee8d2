//! Finite posets, the classic and semiclosed Rhodes lattices, lattice
//! probing, and the form classifiers for the two worked examples
//! `Z6.K4` and `Z6.C4`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{GroupElement, GroupTable};
use crate::bias::BiasedGraph;
use crate::bits::{Bits, VertexSet};
use crate::error::{guard, Error, Result};
use crate::gain::GainGraph;
use crate::matroid::{self, MatroidKind};
use crate::multigraph::{Multigraph, Subgraph};
use crate::rhodes::{closed_family, enumerate_graphic, BalancedHost};
use crate::Limits;

/// An element of a Rhodes lattice: a subgraph, or the synthetic top `1̂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LatticeElement {
    Subgraph(Subgraph),
    Top,
}

impl LatticeElement {
    pub fn subgraph(&self) -> Option<&Subgraph> {
        match self {
            LatticeElement::Subgraph(s) => Some(s),
            LatticeElement::Top => None,
        }
    }

    pub fn is_top(&self) -> bool {
        matches!(self, LatticeElement::Top)
    }

    /// Subgraph containment, with `1̂` above everything.
    pub fn leq(&self, other: &LatticeElement) -> bool {
        match (self, other) {
            (_, LatticeElement::Top) => true,
            (LatticeElement::Top, _) => false,
            (LatticeElement::Subgraph(a), LatticeElement::Subgraph(b)) => a.is_subgraph_of(b),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LatticeKind {
    Classic,
    Frame,
    Lift,
    Semiclosed,
}

impl LatticeKind {
    pub const ALL: [LatticeKind; 4] = [LatticeKind::Classic, LatticeKind::Frame, LatticeKind::Lift, LatticeKind::Semiclosed];

    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Classic => "classic",
            LatticeKind::Frame => "frame",
            LatticeKind::Lift => "lift",
            LatticeKind::Semiclosed => "semiclosed",
        }
    }
}

/// A bitset row over poset element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Row(Vec<u64>);

impl Row {
    fn new(n: usize) -> Row {
        Row(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and(&self, other: &Row) -> Row {
        Row(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &Row) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }
}

/// A finite partial order over indexed elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset<T> {
    elements: Vec<T>,
    /// `up[i]` holds every `j` with `i <= j`.
    up: Vec<Row>,
    down: Vec<Row>,
}

impl<T> FinitePoset<T> {
    /// Builds the poset, rejecting relations that are not reflexive,
    /// antisymmetric and transitive.
    pub fn from_relation(elements: Vec<T>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let poset = Self::from_relation_unchecked(elements, leq);
        poset.validate()?;
        Ok(poset)
    }

    pub fn from_matrix(elements: Vec<T>, matrix: &[Vec<bool>]) -> Result<Self> {
        let n = elements.len();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::NotPartialOrder(format!("relation matrix is not {n} x {n}")));
        }
        Self::from_relation(elements, |i, j| matrix[i][j])
    }

    fn from_relation_unchecked(elements: Vec<T>, leq: impl Fn(usize, usize) -> bool) -> Self {
        let n = elements.len();
        let mut up = vec![Row::new(n); n];
        let mut down = vec![Row::new(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            for (j, column) in down.iter_mut().enumerate() {
                if leq(i, j) {
                    row.set(j);
                    column.set(i);
                }
            }
        }
        FinitePoset { elements, up, down }
    }

    fn validate(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if !self.up[i].get(i) {
                return Err(Error::NotPartialOrder(format!("not reflexive at {i}")));
            }
            for j in self.up[i].iter() {
                if j != i && self.up[j].get(i) {
                    return Err(Error::NotPartialOrder(format!("{i} and {j} are mutually below each other")));
                }
                if !self.up[j].is_subset(&self.up[i]) {
                    let k = self.up[j].iter().find(|&k| !self.up[i].get(k)).unwrap_or(j);
                    return Err(Error::NotPartialOrder(format!("{i} <= {j} <= {k} but not {i} <= {k}")));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> Result<&T> {
        self.elements.get(i).ok_or(Error::NotAnElement(i))
    }

    /// Panics on out-of-range indices.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].get(j)
    }

    pub fn upper_set(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[i].iter()
    }

    pub fn lower_set(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.down[i].iter()
    }

    pub fn covers(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j) && self.up[i].and(&self.down[j]).count() == 2
    }

    /// The covering relation `(lower, upper)`, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in self.up[i].iter() {
                if self.covers(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.up[i].count() == self.len())
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.down[i].count() == self.len())
    }

    pub fn atoms(&self) -> Vec<usize> {
        match self.bottom() {
            Some(b) => self.up[b].iter().filter(|&j| self.covers(b, j)).collect(),
            None => Vec::new(),
        }
    }

    /// The greatest element of a row of candidates, if it has one.
    fn extreme(&self, candidates: &Row, rows: &[Row]) -> Option<usize> {
        let best = candidates.iter().max_by_key(|&z| rows[z].count())?;
        candidates.is_subset(&rows[best]).then_some(best)
    }

    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        self.extreme(&self.down[i].and(&self.down[j]), &self.down)
    }

    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        self.extreme(&self.up[i].and(&self.up[j]), &self.up)
    }

    /// True iff `subset` is downward closed.
    pub fn is_order_ideal(&self, subset: &[usize]) -> Result<bool> {
        let mut member = Row::new(self.len());
        for &i in subset {
            if i >= self.len() {
                return Err(Error::NotAnElement(i));
            }
            member.set(i);
        }
        Ok(subset.iter().all(|&i| self.down[i].is_subset(&member)))
    }
}

impl FinitePoset<LatticeElement> {
    /// Containment order on distinct elements (duplicates are dropped).
    pub fn by_containment(mut elements: Vec<LatticeElement>) -> Self {
        elements.sort();
        elements.dedup();
        let snapshot = elements.clone();
        Self::from_relation_unchecked(elements, |i, j| snapshot[i].leq(&snapshot[j]))
    }

    pub fn index_of(&self, x: &LatticeElement) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    /// Indices of the elements that are balanced subgraphs.
    pub fn balanced_indices<H: BalancedHost + ?Sized>(&self, host: &H) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.elements[i].subgraph().is_some_and(|s| host.is_balanced(s)))
            .collect()
    }
}

/// Why a poset fails to be a geometric lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometricFailure {
    NoMeet(usize, usize),
    NoJoin(usize, usize),
    Empty,
    /// Not the join of the atoms below it.
    NotAtomistic(usize),
    /// Both cover their meet but their join covers neither or only one.
    NotSemimodular(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeProbe {
    pub element_count: usize,
    pub pairs_checked: usize,
    pub missing_meets: usize,
    pub missing_joins: usize,
    pub first_missing_meet: Option<(usize, usize)>,
    pub first_missing_join: Option<(usize, usize)>,
    /// `None` iff the poset is a geometric lattice.
    pub geometric_failure: Option<GeometricFailure>,
}

impl LatticeProbe {
    pub fn is_lattice(&self) -> bool {
        self.element_count > 0 && self.missing_meets == 0 && self.missing_joins == 0
    }

    pub fn is_geometric(&self) -> bool {
        self.geometric_failure.is_none()
    }
}

/// Checks every pair for a meet and a join, then atomicity and upper
/// semimodularity.
pub fn probe_lattice<T>(poset: &FinitePoset<T>) -> LatticeProbe {
    let n = poset.len();
    let mut probe = LatticeProbe {
        element_count: n,
        pairs_checked: 0,
        missing_meets: 0,
        missing_joins: 0,
        first_missing_meet: None,
        first_missing_join: None,
        geometric_failure: None,
    };
    if n == 0 {
        probe.geometric_failure = Some(GeometricFailure::Empty);
        return probe;
    }
    for i in 0..n {
        for j in i + 1..n {
            probe.pairs_checked += 1;
            if poset.meet(i, j).is_none() {
                probe.missing_meets += 1;
                probe.first_missing_meet.get_or_insert((i, j));
            }
            if poset.join(i, j).is_none() {
                probe.missing_joins += 1;
                probe.first_missing_join.get_or_insert((i, j));
            }
        }
    }
    probe.geometric_failure = if let Some((i, j)) = probe.first_missing_meet {
        Some(GeometricFailure::NoMeet(i, j))
    } else if let Some((i, j)) = probe.first_missing_join {
        Some(GeometricFailure::NoJoin(i, j))
    } else {
        geometric_failure(poset)
    };
    probe
}

/// Assumes a lattice.
fn geometric_failure<T>(poset: &FinitePoset<T>) -> Option<GeometricFailure> {
    let bottom = poset.bottom().expect("a lattice has a bottom");
    let atoms = poset.atoms();
    for x in 0..poset.len() {
        let join = atoms
            .iter()
            .filter(|&&a| poset.leq(a, x))
            .fold(bottom, |acc, &a| poset.join(acc, a).expect("lattice"));
        if join != x {
            return Some(GeometricFailure::NotAtomistic(x));
        }
    }
    for a in 0..poset.len() {
        for b in a + 1..poset.len() {
            let m = poset.meet(a, b).expect("lattice");
            if poset.covers(m, a) && poset.covers(m, b) {
                let j = poset.join(a, b).expect("lattice");
                if !(poset.covers(a, j) && poset.covers(b, j)) {
                    return Some(GeometricFailure::NotSemimodular(a, b));
                }
            }
        }
    }
    None
}

/// `R̂`: the closed balanced subgraphs plus `1̂`.
pub fn classic_rhodes_lattice<H: BalancedHost + ?Sized>(host: &H, limits: &Limits) -> Result<FinitePoset<LatticeElement>> {
    let graphic = enumerate_graphic(host, limits)?;
    let mut elements: Vec<LatticeElement> = graphic.elements().iter().copied().map(LatticeElement::Subgraph).collect();
    elements.push(LatticeElement::Top);
    Ok(FinitePoset::by_containment(elements))
}

fn check_subgraph(graph: &Multigraph, sub: &Subgraph) -> Result<()> {
    graph.subgraph(sub.vertices(), sub.edges()).map(|_| ())
}

/// Completes balanced circles that lie in `sub` but for one edge, to a
/// fixpoint. Balance of `sub` is not required.
pub fn semiclosed_closure(host: &BiasedGraph, sub: &Subgraph) -> Result<Subgraph> {
    check_subgraph(host.graph(), sub)?;
    let edges = host.complete_balanced_circles(sub.vertices(), sub.edges());
    host.graph().subgraph(sub.vertices(), edges)
}

pub fn is_semiclosed(host: &BiasedGraph, sub: &Subgraph) -> Result<bool> {
    Ok(semiclosed_closure(host, sub)? == *sub)
}

/// Every semiclosed subgraph of every induced subgraph, sorted. Exhaustive,
/// so only for hosts within `max_brute_force_edges`.
pub fn semiclosed_elements(host: &BiasedGraph, limits: &Limits) -> Result<Vec<Subgraph>> {
    let graph = host.graph();
    guard("max_vertices", limits.max_vertices, graph.vertex_count())?;
    guard("max_brute_force_edges", limits.max_brute_force_edges, graph.edge_count())?;
    let mut out = Vec::new();
    for x in graph.all_vertices().subsets() {
        let start = semiclosed_closure(host, &Subgraph::edgeless(x))?;
        out.extend(closed_family(graph.edges_within(x), start, limits.max_elements, |s| {
            semiclosed_closure(host, s).map(Some)
        })?);
        guard("max_elements", limits.max_elements, out.len())?;
    }
    out.sort();
    Ok(out)
}

/// `R^S`, ordered by containment.
pub fn semiclosed_lattice(host: &BiasedGraph, limits: &Limits) -> Result<FinitePoset<LatticeElement>> {
    let elements = semiclosed_elements(host, limits)?;
    Ok(FinitePoset::by_containment(elements.into_iter().map(LatticeElement::Subgraph).collect()))
}

pub fn rhodes_lattice(kind: LatticeKind, host: &BiasedGraph, limits: &Limits) -> Result<FinitePoset<LatticeElement>> {
    match kind {
        LatticeKind::Classic => classic_rhodes_lattice(host, limits),
        LatticeKind::Frame => matroid::frame_rhodes_lattice(host, limits),
        LatticeKind::Lift => matroid::lift_rhodes_lattice(host, limits),
        LatticeKind::Semiclosed => semiclosed_lattice(host, limits),
    }
}

/// The join proposed by closing the union inside the subgraph induced on
/// both vertex sets. In the classic lattice an unbalanced union gives `1̂`.
pub fn closure_join(kind: LatticeKind, host: &BiasedGraph, a: &LatticeElement, b: &LatticeElement) -> Result<LatticeElement> {
    let (LatticeElement::Subgraph(a), LatticeElement::Subgraph(b)) = (a, b) else {
        return Ok(LatticeElement::Top);
    };
    let union = a.union(b);
    let x = union.vertices();
    let joined = match kind {
        LatticeKind::Classic => {
            if !BalancedHost::is_balanced(host, &union) {
                return Ok(LatticeElement::Top);
            }
            host.closed_balanced_closure(&union)?
        }
        LatticeKind::Frame => Subgraph::from_parts(x, matroid::closure(MatroidKind::Frame, host, x, union.edges())?),
        LatticeKind::Lift => Subgraph::from_parts(x, matroid::closure(MatroidKind::Lift, host, x, union.edges())?),
        LatticeKind::Semiclosed => semiclosed_closure(host, &union)?,
    };
    Ok(LatticeElement::Subgraph(joined))
}

/// The first pair whose closure join is not their least upper bound in the
/// poset, if any.
pub fn closure_join_mismatch(
    kind: LatticeKind,
    host: &BiasedGraph,
    poset: &FinitePoset<LatticeElement>,
) -> Result<Option<(usize, usize)>> {
    for i in 0..poset.len() {
        for j in i + 1..poset.len() {
            let proposed = closure_join(kind, host, &poset.elements()[i], &poset.elements()[j])?;
            if poset.join(i, j) != poset.index_of(&proposed) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// The two worked examples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fixture {
    /// `Z6.K4`
    Z6K4,
    /// `Z6.C4`
    Z6C4,
}

impl Fixture {
    pub fn gain_graph(self) -> GainGraph {
        let base = match self {
            Fixture::Z6K4 => Multigraph::complete(4),
            Fixture::Z6C4 => Multigraph::cycle(4),
        };
        let z6 = GroupTable::cyclic(6).expect("cyclic group");
        GainGraph::group_expansion(&base.expect("fixed base graph"), &z6).expect("loop-free base")
    }

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Z6K4 => "Z6.K4",
            Fixture::Z6C4 => "Z6.C4",
        }
    }

    /// Recognizes a fixture by vertex count, group and the multiset of
    /// oriented gained edges, ignoring ids.
    pub fn detect(phi: &GainGraph) -> Result<Fixture> {
        let signature = |g: &GainGraph| {
            let mut edges: Vec<(usize, usize, usize)> = g
                .graph()
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let gain = g.gain(i);
                    if e.tail <= e.head {
                        (e.tail, e.head, gain.index())
                    } else {
                        (e.head, e.tail, g.group().inv(gain).index())
                    }
                })
                .collect();
            edges.sort_unstable();
            (g.graph().vertex_count(), g.group().cyclic_order(), edges)
        };
        let mine = signature(phi);
        [Fixture::Z6K4, Fixture::Z6C4]
            .into_iter()
            .find(|f| signature(&f.gain_graph()) == mine)
            .ok_or_else(|| Error::WrongFixture("host is neither the Z6 expansion of K4 nor of C4".into()))
    }
}

/// Shapes of unbalanced elements. `Xi` is a set of `i` vertices carrying the
/// full expansion, `Yj` a disjoint set of `j` isolated vertices, `eY2` one
/// edge on two further vertices, `FullY2` a second full 2-vertex expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormTag {
    X2,
    X2Y1,
    X2Y2,
    X2EdgeY2,
    X2FullY2,
    X3,
    X3Y1,
    Whole,
}

impl FormTag {
    pub fn label(self) -> &'static str {
        match self {
            FormTag::X2 => "Φ:X2",
            FormTag::X2Y1 => "Φ:X2 ∪ Y1",
            FormTag::X2Y2 => "Φ:X2 ∪ Y2",
            FormTag::X2EdgeY2 => "Φ:X2 ∪ e_Y2",
            FormTag::X2FullY2 => "Φ:X2 ∪ Φ:Y2",
            FormTag::X3 => "Φ:X3",
            FormTag::X3Y1 => "Φ:X3 ∪ Y1",
            FormTag::Whole => "Φ",
        }
    }
}

impl fmt::Display for FormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A matched form with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormDescriptor {
    pub tag: FormTag,
    /// Vertex sets carrying the full expansion, sorted.
    pub full: Vec<VertexSet>,
    pub isolated: VertexSet,
    /// The single edge of an `e_Y2`.
    pub edge: Option<usize>,
}

/// Forms listed for the unbalanced elements of each lattice.
pub fn listed_forms(fixture: Fixture, kind: LatticeKind) -> Result<&'static [FormTag]> {
    use FormTag::*;
    match (fixture, kind) {
        (_, LatticeKind::Classic) => Ok(&[Whole]),
        (_, LatticeKind::Frame) => Ok(&[X2, X2Y1, X2Y2, X2EdgeY2, X3, X3Y1, Whole]),
        (Fixture::Z6K4, LatticeKind::Lift) => Ok(&[X2, X2Y1, X2Y2, X2FullY2, X3, X3Y1, Whole]),
        (Fixture::Z6C4, LatticeKind::Lift) => Ok(&[X2, X2Y1, X2Y2, X2EdgeY2, X3, X3Y1, X2FullY2, Whole]),
        (_, LatticeKind::Semiclosed) => {
            Err(Error::Unsupported("semiclosed elements are checked by membership, not by form".into()))
        }
    }
}

/// The form of an unbalanced subgraph of the fixture, whichever list it is
/// on; `None` for balanced subgraphs and unrecognized shapes.
pub fn form_of(phi: &GainGraph, sub: &Subgraph) -> Option<FormDescriptor> {
    if phi.is_balanced_subgraph(sub) {
        return None;
    }
    let graph = phi.graph();
    let mut full = Vec::new();
    let mut isolated = Bits::EMPTY;
    let mut edge = None;
    for (vs, es) in graph.component_parts(sub) {
        if vs.len() == 1 && es.is_empty() {
            isolated.insert(vs.first().expect("one vertex"));
        } else if vs.len() >= 2 && es == graph.edges_within(vs) && !phi.is_balanced_subgraph(&Subgraph::from_parts(vs, es)) {
            full.push(vs);
        } else if vs.len() == 2 && es.len() == 1 && edge.is_none() {
            edge = es.first();
        } else {
            return None;
        }
    }
    full.sort();
    let sizes: Vec<usize> = full.iter().map(|b| b.len()).collect();
    let tag = match (sizes.as_slice(), edge.is_some(), isolated.len()) {
        ([2], false, 0) => FormTag::X2,
        ([2], false, 1) => FormTag::X2Y1,
        ([2], false, 2) => FormTag::X2Y2,
        ([2], true, 0) => FormTag::X2EdgeY2,
        ([2, 2], false, 0) => FormTag::X2FullY2,
        ([3], false, 0) => FormTag::X3,
        ([3], false, 1) => FormTag::X3Y1,
        ([4], false, 0) => FormTag::Whole,
        _ => return None,
    };
    Some(FormDescriptor { tag, full, isolated, edge })
}

/// Classifies a lattice element of a fixture against the list for `kind`.
/// `1̂` is read as the whole host. Balanced and unlisted elements give `None`.
pub fn classify_form(phi: &GainGraph, kind: LatticeKind, element: &LatticeElement) -> Result<Option<FormDescriptor>> {
    let fixture = Fixture::detect(phi)?;
    let listed = listed_forms(fixture, kind)?;
    let whole = phi.graph().whole();
    let sub = element.subgraph().unwrap_or(&whole);
    Ok(form_of(phi, sub).filter(|d| listed.contains(&d.tag)))
}

/// Every instance of every form listed for `kind`, built directly from the
/// base graph.
pub fn form_instances(fixture: Fixture, kind: LatticeKind) -> Result<Vec<(FormDescriptor, Subgraph)>> {
    let listed = listed_forms(fixture, kind)?;
    let phi = fixture.gain_graph();
    let graph = phi.graph();
    let all = graph.all_vertices();
    let full_on = |b: VertexSet, size: usize| {
        b.len() == size && !graph.edges_within(b).is_empty() && graph.component_parts(&Subgraph::from_parts(b, graph.edges_within(b))).len() == 1
    };
    let pairs: Vec<VertexSet> = all.subsets().filter(|&b| full_on(b, 2)).collect();
    let triples: Vec<VertexSet> = all.subsets().filter(|&b| full_on(b, 3)).collect();
    let e = |b: VertexSet| graph.edges_within(b);
    let mut out = BTreeSet::new();
    let mut add = |tag: FormTag, full: Vec<VertexSet>, isolated: VertexSet, edge: Option<usize>| {
        let mut vertices = isolated;
        let mut edges = edge.map_or(Bits::EMPTY, Bits::singleton);
        if let Some(x) = edge {
            vertices = vertices | graph.edge(x).ends();
        }
        for &b in &full {
            vertices = vertices | b;
            edges = edges | e(b);
        }
        out.insert((FormDescriptor { tag, full, isolated, edge }, Subgraph::from_parts(vertices, edges)));
    };
    for &tag in listed {
        match tag {
            FormTag::X2 | FormTag::X2Y1 | FormTag::X2Y2 | FormTag::X2EdgeY2 => {
                for &b in &pairs {
                    let rest = all - b;
                    match tag {
                        FormTag::X2 => add(tag, vec![b], Bits::EMPTY, None),
                        FormTag::X2Y1 => rest.iter().for_each(|y| add(tag, vec![b], Bits::singleton(y), None)),
                        FormTag::X2Y2 => {
                            rest.subsets().filter(|y| y.len() == 2).for_each(|y| add(tag, vec![b], y, None));
                        }
                        _ => {
                            for y in rest.subsets().filter(|y| y.len() == 2) {
                                e(y).iter().for_each(|x| add(tag, vec![b], Bits::EMPTY, Some(x)));
                            }
                        }
                    }
                }
            }
            FormTag::X2FullY2 => {
                for (i, &b) in pairs.iter().enumerate() {
                    for &c in &pairs[i + 1..] {
                        if b.is_disjoint(c) {
                            add(tag, vec![b, c], Bits::EMPTY, None);
                        }
                    }
                }
            }
            FormTag::X3 => triples.iter().for_each(|&t| add(tag, vec![t], Bits::EMPTY, None)),
            FormTag::X3Y1 => {
                for &t in &triples {
                    (all - t).iter().for_each(|y| add(tag, vec![t], Bits::singleton(y), None));
                }
            }
            FormTag::Whole => add(tag, vec![all], Bits::EMPTY, None),
        }
    }
    Ok(out.into_iter().collect())
}

/// Two-sided comparison of a lattice's unbalanced elements with a list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormReport {
    pub fixture: Fixture,
    pub kind: LatticeKind,
    pub unbalanced: usize,
    /// Unbalanced elements per listed form.
    pub counts: BTreeMap<FormTag, usize>,
    /// Unbalanced elements matching no listed form.
    pub unlisted: Vec<LatticeElement>,
    /// Instances of listed forms absent from the lattice.
    pub missing: Vec<(FormDescriptor, Subgraph)>,
}

impl FormReport {
    pub fn passes(&self) -> bool {
        self.unlisted.is_empty() && self.missing.is_empty()
    }
}

/// Compares the unbalanced elements of `poset` (a lattice of the fixture
/// `phi`) with the listed forms for `kind`.
pub fn compare_forms(phi: &GainGraph, kind: LatticeKind, poset: &FinitePoset<LatticeElement>) -> Result<FormReport> {
    let fixture = Fixture::detect(phi)?;
    let whole = phi.graph().whole();
    let mut report = FormReport {
        fixture,
        kind,
        unbalanced: 0,
        counts: BTreeMap::new(),
        unlisted: Vec::new(),
        missing: Vec::new(),
    };
    let mut present = BTreeSet::new();
    for element in poset.elements() {
        let sub = *element.subgraph().unwrap_or(&whole);
        if phi.is_balanced_subgraph(&sub) {
            continue;
        }
        report.unbalanced += 1;
        present.insert(sub);
        match classify_form(phi, kind, element)? {
            Some(d) => *report.counts.entry(d.tag).or_insert(0) += 1,
            None => report.unlisted.push(*element),
        }
    }
    report.missing = form_instances(fixture, kind)?.into_iter().filter(|(_, s)| !present.contains(s)).collect();
    Ok(report)
}

/// Builds the `kind` lattice of a fixture and compares it with its list.
pub fn verify_forms(phi: &GainGraph, kind: LatticeKind, limits: &Limits) -> Result<FormReport> {
    listed_forms(Fixture::detect(phi)?, kind)?;
    let bias = BiasedGraph::from_gains_unvalidated(phi, limits)?;
    let poset = match kind {
        LatticeKind::Classic => classic_rhodes_lattice(phi, limits)?,
        LatticeKind::Frame => matroid::frame_rhodes_lattice(&bias, limits)?,
        LatticeKind::Lift => matroid::lift_rhodes_lattice(&bias, limits)?,
        LatticeKind::Semiclosed => unreachable!("rejected by listed_forms"),
    };
    compare_forms(phi, kind, &poset)
}

/// The subgraph of a switched subgroup expansion: every edge whose gain lies
/// in `zeta(tail)^{-1} h zeta(head)`.
pub fn switched_subgroup_expansion(phi: &GainGraph, subgroup: &[GroupElement], zeta: &[GroupElement]) -> Subgraph {
    let group = phi.group();
    let mut edges = Bits::EMPTY;
    for (i, e) in phi.graph().edges().iter().enumerate() {
        let regauged = group.mul(group.mul(zeta[e.tail], phi.gain(i)), group.inv(zeta[e.head]));
        if subgroup.contains(&regauged) {
            edges.insert(i);
        }
    }
    Subgraph::from_parts(phi.graph().all_vertices(), edges)
}

/// Every subgraph of a listed semiclosed form of `Z6.K4`: edgeless vertex
/// sets, nonempty edge choices `A:X2` with `Y1`, `Y2` or `B:Y2` beside them,
/// and every switching of every subgroup expansion on three or four vertices
/// (with the fourth vertex isolated or absent).
pub fn listed_semiclosed_forms(fixture: Fixture) -> Result<Vec<Subgraph>> {
    if fixture != Fixture::Z6K4 {
        return Err(Error::Unsupported(format!("semiclosed forms are listed only for {}", Fixture::Z6K4.name())));
    }
    let phi = fixture.gain_graph();
    let graph = phi.graph();
    let group = phi.group();
    let all = graph.all_vertices();
    let n = graph.vertex_count();
    let mut out = BTreeSet::new();
    for x in all.subsets() {
        out.insert(Subgraph::edgeless(x));
    }
    for b in all.subsets().filter(|b| b.len() == 2) {
        let rest = all - b;
        for a in graph.edges_within(b).subsets().filter(|a| !a.is_empty()) {
            out.insert(Subgraph::from_parts(b, a));
            for y in rest.iter() {
                out.insert(Subgraph::from_parts(b.with(y), a));
            }
            out.insert(Subgraph::from_parts(all, a));
            for c in graph.edges_within(rest).subsets().filter(|c| !c.is_empty()) {
                out.insert(Subgraph::from_parts(all, a | c));
            }
        }
    }
    for subgroup in group.subgroups()? {
        let mut digits = vec![0usize; n];
        loop {
            let zeta: Vec<GroupElement> = digits.iter().map(|&d| group.element(d)).collect::<Result<_>>()?;
            let expansion = switched_subgroup_expansion(&phi, &subgroup, &zeta);
            out.insert(expansion);
            for t in all.subsets().filter(|t| t.len() == 3) {
                let on_t = expansion.edges() & graph.edges_within(t);
                out.insert(Subgraph::from_parts(t, on_t));
                out.insert(Subgraph::from_parts(all, on_t));
            }
            if !advance(&mut digits, group.order()) {
                break;
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2k3() -> GainGraph {
        GainGraph::group_expansion(&Multigraph::complete(3).unwrap(), &GroupTable::cyclic(2).unwrap()).unwrap()
    }

    fn chain(n: usize) -> FinitePoset<usize> {
        FinitePoset::from_relation((0..n).collect(), |i, j| i <= j).unwrap()
    }

    #[test]
    fn relations_are_validated() {
        assert!(FinitePoset::from_matrix(vec![0, 1], &[vec![true, false], vec![false, true]]).is_ok());
        let not_reflexive = FinitePoset::from_matrix(vec![0], &[vec![false]]);
        assert!(matches!(not_reflexive, Err(Error::NotPartialOrder(_))));
        let cycle = FinitePoset::from_matrix(vec![0, 1], &[vec![true, true], vec![true, true]]);
        assert!(cycle.is_err());
        let intransitive = FinitePoset::from_relation(vec![0, 1, 2], |i, j| i == j || j == i + 1);
        assert!(intransitive.is_err());
    }

    #[test]
    fn chains() {
        let c = chain(3);
        assert_eq!(c.cover_pairs(), vec![(0, 1), (1, 2)]);
        assert_eq!(c.meet(0, 2), Some(0));
        assert_eq!(c.join(0, 2), Some(2));
        let probe = probe_lattice(&c);
        assert!(probe.is_lattice());
        assert_eq!(probe.geometric_failure, Some(GeometricFailure::NotAtomistic(2)));
        assert!(probe_lattice(&chain(2)).is_geometric());
    }

    #[test]
    fn missing_joins_are_reported() {
        // two incomparable maximal elements over a bottom
        let v = FinitePoset::from_relation(vec![0, 1, 2], |i, j| i == j || i == 0).unwrap();
        let probe = probe_lattice(&v);
        assert!(!probe.is_lattice());
        assert_eq!(probe.first_missing_join, Some((1, 2)));
        assert_eq!(probe.geometric_failure, Some(GeometricFailure::NoJoin(1, 2)));
    }

    #[test]
    fn boolean_lattice_is_geometric() {
        let b3 = FinitePoset::from_relation((0u32..8).collect(), |i, j| i & !j == 0).unwrap();
        let probe = probe_lattice(&b3);
        assert!(probe.is_geometric(), "{probe:?}");
        assert_eq!(b3.atoms(), vec![1, 2, 4]);
    }

    #[test]
    fn order_ideals() {
        let c = chain(3);
        assert!(c.is_order_ideal(&[]).unwrap());
        assert!(c.is_order_ideal(&[0, 1]).unwrap());
        assert!(!c.is_order_ideal(&[2]).unwrap());
        assert_eq!(c.is_order_ideal(&[5]), Err(Error::NotAnElement(5)));
    }

    #[test]
    fn classic_lattice_of_z2k3() {
        let phi = z2k3();
        let lattice = classic_rhodes_lattice(&phi, &Limits::default()).unwrap();
        assert_eq!(lattice.len(), 25);
        let top = lattice.top().unwrap();
        assert!(lattice.elements()[top].is_top());
        let probe = probe_lattice(&lattice);
        assert!(probe.is_lattice());
        let balanced = lattice.balanced_indices(&phi);
        assert_eq!(balanced.len(), 24);
        assert!(lattice.is_order_ideal(&balanced).unwrap());
        assert!(!lattice.is_order_ideal(&[top]).unwrap());
    }

    #[test]
    fn semiclosed_closure_examples() {
        let phi = z2k3();
        let bias = BiasedGraph::from_gains(&phi, &Limits::default()).unwrap();
        let v: VertexSet = [0, 1, 2].into_iter().collect();
        let path = Subgraph::from_parts(v, [0, 4].into_iter().collect());
        let triangle = Subgraph::from_parts(v, [0, 2, 4].into_iter().collect());
        assert_eq!(semiclosed_closure(&bias, &path).unwrap(), triangle);
        assert!(is_semiclosed(&bias, &triangle).unwrap());
        // an unbalanced digon is already semiclosed on its two vertices
        let digon = Subgraph::from_parts([0, 1].into_iter().collect(), [0, 1].into_iter().collect());
        assert!(is_semiclosed(&bias, &digon).unwrap());
        let bad = Subgraph::from_parts([0, 1].into_iter().collect(), [2].into_iter().collect());
        assert!(semiclosed_closure(&bias, &bad).is_err());
    }

    #[test]
    fn frame_lattice_of_z2k3_is_not_geometric() {
        let phi = z2k3();
        let bias = BiasedGraph::from_gains(&phi, &Limits::default()).unwrap();
        let lattice = matroid::frame_rhodes_lattice(&bias, &Limits::default()).unwrap();
        let probe = probe_lattice(&lattice);
        assert!(probe.is_lattice(), "{probe:?}");
        assert!(matches!(probe.geometric_failure, Some(GeometricFailure::NotAtomistic(_))));
        assert_eq!(closure_join_mismatch(LatticeKind::Frame, &bias, &lattice).unwrap(), None);
    }

    #[test]
    fn fixtures_are_recognized() {
        assert_eq!(Fixture::detect(&Fixture::Z6K4.gain_graph()), Ok(Fixture::Z6K4));
        assert_eq!(Fixture::detect(&Fixture::Z6C4.gain_graph()), Ok(Fixture::Z6C4));
        assert!(matches!(Fixture::detect(&z2k3()), Err(Error::WrongFixture(_))));
    }

    #[test]
    fn classifier_examples() {
        let phi = Fixture::Z6K4.gain_graph();
        let g = phi.graph();
        let x2: VertexSet = [0, 1].into_iter().collect();
        let sub = Subgraph::from_parts(x2.with(3), g.edges_within(x2));
        let d = classify_form(&phi, LatticeKind::Frame, &LatticeElement::Subgraph(sub)).unwrap().unwrap();
        assert_eq!(d.tag, FormTag::X2Y1);
        assert_eq!(classify_form(&phi, LatticeKind::Frame, &LatticeElement::Top).unwrap().unwrap().tag, FormTag::Whole);
        let balanced = LatticeElement::Subgraph(Subgraph::edgeless(x2));
        assert_eq!(classify_form(&phi, LatticeKind::Frame, &balanced).unwrap(), None);

        let psi = Fixture::Z6C4.gain_graph();
        let g = psi.graph();
        // C4 edges 01, 12, 23, 30; opposite edges 01 and 23
        let x2: VertexSet = [0, 1].into_iter().collect();
        let y2: VertexSet = [2, 3].into_iter().collect();
        let e = g.edges_within(y2).first().unwrap();
        let sub = Subgraph::from_parts(x2 | y2, g.edges_within(x2).with(e));
        let d = classify_form(&psi, LatticeKind::Frame, &LatticeElement::Subgraph(sub)).unwrap().unwrap();
        assert_eq!(d.tag, FormTag::X2EdgeY2);
        assert_eq!(d.edge, Some(e));
        assert!(matches!(classify_form(&z2k3(), LatticeKind::Frame, &LatticeElement::Top), Err(Error::WrongFixture(_))));
        assert!(matches!(classify_form(&psi, LatticeKind::Semiclosed, &LatticeElement::Top), Err(Error::Unsupported(_))));
    }

    #[test]
    fn instances_classify_as_their_own_form() {
        for fixture in [Fixture::Z6K4, Fixture::Z6C4] {
            let phi = fixture.gain_graph();
            for kind in [LatticeKind::Classic, LatticeKind::Frame, LatticeKind::Lift] {
                for (d, sub) in form_instances(fixture, kind).unwrap() {
                    assert_eq!(form_of(&phi, &sub), Some(d));
                }
            }
        }
    }
}
