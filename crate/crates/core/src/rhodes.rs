//! The Rhodes semilattice of a gain graph in its two representations.
//!
//! * Partition-potential side: pairs `(pi, [theta]_pi)` whose image under
//!   [`b_map`] has exactly the blocks of `pi` as components.
//! * Graphic side: closed and balanced subgraphs ordered by inclusion, for
//!   any [`BalancedHost`] (a gain graph, or a biased graph).
//!
//! [`verify_isomorphism`] checks exhaustively that `b_map` is an order
//! isomorphism between the two.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{GroupElement, GroupTable};
use crate::bias::BiasedGraph;
use crate::bits::{Bits, EdgeSet};
use crate::error::{guard, Error, Result};
use crate::gain::GainGraph;
use crate::multigraph::{Multigraph, Subgraph};
use crate::partition::{canonicalize, restrict, PartialPartition, PotentialFunction, PotentialSystem};
use crate::unionfind::UnionFind;
use crate::Limits;

/// `(pi, [theta]_pi)`, held as its potential system.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionPotentialPair(PotentialSystem);

impl PartitionPotentialPair {
    pub fn new(system: PotentialSystem) -> Self {
        PartitionPotentialPair(system)
    }

    pub fn from_function(group: &GroupTable, partition: &PartialPartition, theta: &PotentialFunction) -> Result<Self> {
        canonicalize(group, partition, theta).map(PartitionPotentialPair)
    }

    /// The bottom element `(empty, -)` over ground set `0..ground`.
    pub fn bottom(ground: usize) -> Self {
        PartitionPotentialPair(PotentialSystem::empty(ground))
    }

    pub fn partition(&self) -> &PartialPartition {
        self.0.partition()
    }

    pub fn system(&self) -> &PotentialSystem {
        &self.0
    }

    /// `self <= other`: the partition refines and the potentials agree on it.
    pub fn leq(&self, group: &GroupTable, other: &PartitionPotentialPair) -> bool {
        match self.partition().refines(other.partition()) {
            Ok(true) => restrict(group, &other.0, self.partition()).is_ok_and(|r| r == self.0),
            _ => false,
        }
    }
}

/// Hosts in which balance and closed-balanced closure are decidable.
pub trait BalancedHost {
    fn graph(&self) -> &Multigraph;

    fn is_balanced(&self, sub: &Subgraph) -> bool;

    /// Smallest closed balanced subgraph with the same vertex set containing
    /// a balanced `sub`.
    fn closed_balanced_closure(&self, sub: &Subgraph) -> Result<Subgraph>;

    fn is_closed_balanced(&self, sub: &Subgraph) -> bool {
        self.is_balanced(sub) && self.closed_balanced_closure(sub).is_ok_and(|c| c == *sub)
    }
}

/// Closure through potentials: add every edge inside a component whose gain
/// is the potential difference.
impl BalancedHost for GainGraph {
    fn graph(&self) -> &Multigraph {
        GainGraph::graph(self)
    }

    fn is_balanced(&self, sub: &Subgraph) -> bool {
        self.is_balanced_subgraph(sub)
    }

    fn closed_balanced_closure(&self, sub: &Subgraph) -> Result<Subgraph> {
        let theta = self.potential(sub)?;
        let pi = GainGraph::graph(self).components(sub);
        let pair = PartitionPotentialPair::from_function(self.group(), &pi, &theta)?;
        Ok(b_map(self, &pair))
    }
}

/// Closure through balanced circles: whenever a balanced circle lies in the
/// subgraph but for one edge, add that edge; repeat to a fixpoint.
impl BalancedHost for BiasedGraph {
    fn graph(&self) -> &Multigraph {
        BiasedGraph::graph(self)
    }

    fn is_balanced(&self, sub: &Subgraph) -> bool {
        BiasedGraph::is_balanced(self, sub)
    }

    fn closed_balanced_closure(&self, sub: &Subgraph) -> Result<Subgraph> {
        if !BiasedGraph::is_balanced(self, sub) {
            return Err(unbalanced_witness(self, sub));
        }
        let vertices = sub.vertices();
        let edges = self.complete_balanced_circles(vertices, sub.edges());
        let closed = Subgraph::from_parts(vertices, edges);
        debug_assert!(BiasedGraph::is_balanced(self, &closed));
        Ok(closed)
    }
}

fn unbalanced_witness(bias: &BiasedGraph, sub: &Subgraph) -> Error {
    let edge = bias
        .circles()
        .iter()
        .find(|c| c.edge_set().is_subset(sub.edges()) && !bias.is_balanced_circle(c.edge_set()))
        .and_then(|c| c.edges().first().copied())
        .unwrap_or(0);
    Error::Unbalanced { edge }
}

/// `B(pi, [theta]_pi)`: vertex set `supp pi`, and every edge inside a block
/// whose oriented gain equals the potential difference.
pub fn b_map(phi: &GainGraph, pair: &PartitionPotentialPair) -> Subgraph {
    let group = phi.group();
    let sys = pair.system();
    let support = pair.partition().support();
    let mut edges = Bits::EMPTY;
    for (i, e) in phi.graph().edges().iter().enumerate() {
        if !support.contains(e.tail) || !support.contains(e.head) {
            continue;
        }
        if pair.partition().block_of(e.tail) != pair.partition().block_of(e.head) {
            continue;
        }
        if phi.gain(i) == group.ldiv(sys.rep(e.tail), sys.rep(e.head)) {
            edges.insert(i);
        }
    }
    Subgraph::from_parts(support, edges)
}

/// Every block spans a connected piece of `b_map`.
pub fn is_phi_connected(phi: &GainGraph, pair: &PartitionPotentialPair) -> bool {
    let image = b_map(phi, pair);
    phi.graph().components(&image) == *pair.partition()
}

pub fn is_closed_balanced<H: BalancedHost + ?Sized>(host: &H, sub: &Subgraph) -> bool {
    host.is_closed_balanced(sub)
}

pub fn closed_balanced_closure<H: BalancedHost + ?Sized>(host: &H, sub: &Subgraph) -> Result<Subgraph> {
    host.closed_balanced_closure(sub)
}

/// `(pi(B), [theta]_pi(B))` for a closed balanced `B`.
pub fn pair_of(phi: &GainGraph, sub: &Subgraph) -> Result<PartitionPotentialPair> {
    let theta = phi.potential(sub).map_err(|_| Error::NotClosedBalanced)?;
    let pi = phi.graph().components(sub);
    let pair = PartitionPotentialPair::from_function(phi.group(), &pi, &theta)?;
    if b_map(phi, &pair) != *sub {
        return Err(Error::NotClosedBalanced);
    }
    Ok(pair)
}

/// The meet; see [`meet_pairs_traced`].
pub fn meet_pairs(phi: &GainGraph, p: &PartitionPotentialPair, q: &PartitionPotentialPair) -> PartitionPotentialPair {
    meet_pairs_traced(phi, p, q).0
}

/// The meet of two pairs, and whether the block relation had to be split
/// further to stay connected in `phi`.
///
/// On `supp p ∩ supp q`, `x ~ y` when `x, y` share a block of both pairs and
/// the two potentials give the same difference `theta(x)^{-1} theta(y)`. The
/// blocks of `~` are then split into the components of their `b_map` image,
/// which only matters on hosts that are not complete expansions.
pub fn meet_pairs_traced(
    phi: &GainGraph,
    p: &PartitionPotentialPair,
    q: &PartitionPotentialPair,
) -> (PartitionPotentialPair, bool) {
    let group = phi.group();
    let n = p.partition().ground();
    let support = p.partition().support() & q.partition().support();
    let (theta, eta) = (p.system(), q.system());
    let mut uf = UnionFind::new(n);
    let vs = support.to_vec();
    for (i, &x) in vs.iter().enumerate() {
        for &y in &vs[i + 1..] {
            let same_blocks = p.partition().block_of(x) == p.partition().block_of(y)
                && q.partition().block_of(x) == q.partition().block_of(y);
            if same_blocks && group.ldiv(theta.rep(x), theta.rep(y)) == group.ldiv(eta.rep(x), eta.rep(y)) {
                uf.union(x, y);
            }
        }
    }
    let mut blocks: Vec<Bits> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for &x in &vs {
        let r = uf.find(x);
        match roots.iter().position(|&s| s == r) {
            Some(i) => blocks[i].insert(x),
            None => {
                roots.push(r);
                blocks.push(Bits::singleton(x));
            }
        }
    }
    let rho = PartialPartition::from_sorted_unchecked(n, blocks);
    let theta_fn = theta.to_function();
    let pair = PartitionPotentialPair::from_function(group, &rho, &theta_fn).expect("support inside theta's domain");
    let components = phi.graph().components(&b_map(phi, &pair));
    if components == rho {
        (pair, false)
    } else {
        let refined =
            PartitionPotentialPair::from_function(group, &components, &theta_fn).expect("support inside theta's domain");
        (refined, true)
    }
}

/// `R^b(host)`: closed balanced subgraphs, sorted by vertex set then edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhodesSemilatticeGraphic {
    elements: Vec<Subgraph>,
}

impl RhodesSemilatticeGraphic {
    pub fn elements(&self) -> &[Subgraph] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, sub: &Subgraph) -> bool {
        self.elements.binary_search(sub).is_ok()
    }
}

/// `R(phi)`: phi-connected partition-potential pairs, sorted by support,
/// then pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhodesSemilatticePP {
    elements: Vec<PartitionPotentialPair>,
}

impl RhodesSemilatticePP {
    pub fn elements(&self) -> &[PartitionPotentialPair] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// For every vertex set `X`, the closed balanced subgraphs spanning exactly
/// `X`, generated by adjoining one edge of `E:X` at a time and closing.
pub fn enumerate_graphic<H: BalancedHost + ?Sized>(host: &H, limits: &Limits) -> Result<RhodesSemilatticeGraphic> {
    let graph = host.graph();
    guard("max_vertices", limits.max_vertices, graph.vertex_count())?;
    let mut elements = Vec::new();
    for x in graph.all_vertices().subsets() {
        let found = closed_family(graph.edges_within(x), host.closed_balanced_closure(&Subgraph::edgeless(x))?, limits.max_elements, |s| {
            if host.is_balanced(s) {
                host.closed_balanced_closure(s).map(Some)
            } else {
                Ok(None)
            }
        })?;
        elements.extend(found);
        guard("max_elements", limits.max_elements, elements.len())?;
    }
    elements.sort();
    Ok(RhodesSemilatticeGraphic { elements })
}

/// Breadth-first generation of a closure system on `candidates`: start at
/// `start`, adjoin one candidate edge, close (or reject), repeat.
pub(crate) fn closed_family(
    candidates: EdgeSet,
    start: Subgraph,
    max: usize,
    mut close: impl FnMut(&Subgraph) -> Result<Option<Subgraph>>,
) -> Result<Vec<Subgraph>> {
    let mut seen = BTreeSet::new();
    seen.insert(start);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        for e in candidates - s.edges() {
            let bigger = s.with_edges(Bits::singleton(e));
            if let Some(c) = close(&bigger)? {
                if seen.insert(c) {
                    guard("max_elements", max, seen.len())?;
                    queue.push_back(c);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Every phi-connected pair: for each partial partition, every canonical
/// representative (free values off the block roots).
pub fn enumerate_pp(phi: &GainGraph, limits: &Limits) -> Result<RhodesSemilatticePP> {
    let graph = phi.graph();
    let group = phi.group();
    let n = graph.vertex_count();
    guard("max_vertices", limits.max_vertices, n)?;
    let mut elements = Vec::new();
    for partition in PartialPartition::all_partial(n, graph.all_vertices()) {
        let free: Vec<usize> = partition.blocks().iter().flat_map(|b| b.iter().skip(1)).collect();
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut rep = vec![GroupElement::IDENTITY; n];
            for (&v, &d) in free.iter().zip(&digits) {
                rep[v] = group.element(d)?;
            }
            let pair = PartitionPotentialPair(PotentialSystem::from_canonical(partition.clone(), rep)?);
            if is_phi_connected(phi, &pair) {
                elements.push(pair);
                guard("max_elements", limits.max_elements, elements.len())?;
            }
            if !odometer(&mut digits, group.order()) {
                break;
            }
        }
    }
    elements.sort_by(|a, b| {
        a.partition().support().cmp(&b.partition().support()).then_with(|| a.cmp(b))
    });
    Ok(RhodesSemilatticePP { elements })
}

fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Why `b_map` failed to be an order isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoFailure {
    /// Two pairs with the same image.
    NotInjective(PartitionPotentialPair, PartitionPotentialPair),
    /// An image that is not closed and balanced.
    ImageNotClosedBalanced(PartitionPotentialPair),
    /// A closed balanced subgraph that no pair reaches.
    NotSurjective(Subgraph),
    /// Pair order and subgraph containment disagree.
    OrderMismatch {
        lower: PartitionPotentialPair,
        upper: PartitionPotentialPair,
        pair_leq: bool,
        contained: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoReport {
    pub pair_count: usize,
    pub graphic_count: usize,
    pub order_checks: usize,
    pub failure: Option<IsoFailure>,
}

impl IsoReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that `b_map: R(phi) -> R^b(phi)` is a bijection and that
/// `p <= q` iff `b_map(p) ⊆ b_map(q)` for all pairs. The graphic side is
/// computed independently from the balanced circles of `<phi>`.
pub fn verify_isomorphism(phi: &GainGraph, limits: &Limits) -> Result<IsoReport> {
    let pp = enumerate_pp(phi, limits)?;
    let bias = BiasedGraph::from_gains(phi, limits)?;
    let graphic = enumerate_graphic(&bias, limits)?;
    let mut report = IsoReport { pair_count: pp.len(), graphic_count: graphic.len(), order_checks: 0, failure: None };

    let images: Vec<Subgraph> = pp.elements().iter().map(|p| b_map(phi, p)).collect();
    let mut first_preimage: alloc::collections::BTreeMap<Subgraph, usize> = alloc::collections::BTreeMap::new();
    for (i, img) in images.iter().enumerate() {
        if let Some(&j) = first_preimage.get(img) {
            report.failure = Some(IsoFailure::NotInjective(pp.elements()[j].clone(), pp.elements()[i].clone()));
            return Ok(report);
        }
        first_preimage.insert(*img, i);
        if !graphic.contains(img) {
            report.failure = Some(IsoFailure::ImageNotClosedBalanced(pp.elements()[i].clone()));
            return Ok(report);
        }
    }
    if let Some(missing) = graphic.elements().iter().find(|s| !first_preimage.contains_key(s)) {
        report.failure = Some(IsoFailure::NotSurjective(*missing));
        return Ok(report);
    }
    let group = phi.group();
    for (i, p) in pp.elements().iter().enumerate() {
        for (j, q) in pp.elements().iter().enumerate() {
            let pair_leq = p.leq(group, q);
            let contained = images[i].is_subgraph_of(&images[j]);
            report.order_checks += 1;
            if pair_leq != contained {
                report.failure =
                    Some(IsoFailure::OrderMismatch { lower: p.clone(), upper: q.clone(), pair_leq, contained });
                return Ok(report);
            }
        }
    }
    Ok(report)
}
