//! Gain graphs.
//!
//! Each edge stores one gain, measured along its canonical orientation
//! `tail -> head`; the gain against the orientation is the inverse and is
//! never stored. A loop is balanced exactly when its gain is the identity.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{GroupElement, GroupTable};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::multigraph::{Circle, Multigraph, Subgraph};
use crate::partition::PotentialFunction;
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GainGraph {
    graph: Multigraph,
    group: GroupTable,
    gains: Vec<GroupElement>,
}

/// A walk `v0 e1 v1 ... ek vk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Walk {
    pub fn empty(start: usize) -> Self {
        Walk { vertices: alloc::vec![start], edges: Vec::new() }
    }
}

impl GainGraph {
    /// `gains[i]` is the gain of edge `i` along its canonical orientation.
    pub fn new(graph: Multigraph, group: GroupTable, gains: Vec<GroupElement>) -> Result<Self> {
        if gains.len() != graph.edge_count() {
            return Err(Error::InvalidGraph(format!(
                "{} gains for {} edges",
                gains.len(),
                graph.edge_count()
            )));
        }
        for g in &gains {
            group.element(g.index())?;
        }
        Ok(GainGraph { graph, group, gains })
    }

    /// The group expansion `G . Gamma` of a loop-free graph: one edge `(g, e)`
    /// per group element and base edge, with gain `g` along `e`'s orientation.
    /// Edge `(g, e)` gets id `position(e) * |G| + g`.
    pub fn group_expansion(base: &Multigraph, group: &GroupTable) -> Result<Self> {
        if base.has_loops() {
            return Err(Error::LoopsInExpansion);
        }
        let order = group.order();
        let mut triples = Vec::with_capacity(base.edge_count() * order);
        let mut gains = Vec::with_capacity(base.edge_count() * order);
        let ids = base.vertex_ids();
        for (pos, e) in base.edges().iter().enumerate() {
            for g in group.elements() {
                triples.push(((pos * order + g.index()) as u32, ids[e.tail], ids[e.head]));
                gains.push(g);
            }
        }
        let graph = Multigraph::new(ids.iter().copied(), triples)?;
        GainGraph::new(graph, group.clone(), gains)
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn gains(&self) -> &[GroupElement] {
        &self.gains
    }

    /// Gain of edge `e` along its canonical orientation.
    pub fn gain(&self, e: usize) -> GroupElement {
        self.gains[e]
    }

    /// `phi(e; from, to)`. For a loop both directions give the stored gain.
    pub fn oriented_gain(&self, e: usize, from: usize) -> GroupElement {
        let edge = self.graph.edge(e);
        if edge.tail == from {
            self.gains[e]
        } else {
            self.group.inv(self.gains[e])
        }
    }

    /// Ordered product of oriented gains along a walk; the empty walk has
    /// gain 1.
    pub fn path_gain(&self, walk: &Walk) -> Result<GroupElement> {
        if walk.vertices.len() != walk.edges.len() + 1 {
            return Err(Error::BrokenWalk("needs one more vertex than edges".into()));
        }
        let mut acc = self.group.identity();
        for (i, &e) in walk.edges.iter().enumerate() {
            if e >= self.graph.edge_count() {
                return Err(Error::ForeignEdge(e));
            }
            let (a, b) = (walk.vertices[i], walk.vertices[i + 1]);
            let edge = self.graph.edge(e);
            if !((edge.tail == a && edge.head == b) || (edge.tail == b && edge.head == a)) {
                return Err(Error::BrokenWalk(format!("edge {e} does not join {a} and {b}")));
            }
            acc = self.group.mul(acc, self.oriented_gain(e, a));
        }
        Ok(acc)
    }

    /// Gain of a circle read as a closed path from its first vertex.
    pub fn circle_gain(&self, circle: &Circle) -> GroupElement {
        let vs = circle.vertices();
        circle
            .edges()
            .iter()
            .zip(vs)
            .fold(self.group.identity(), |acc, (&e, &v)| self.group.mul(acc, self.oriented_gain(e, v)))
    }

    pub fn is_balanced_circle(&self, circle: &Circle) -> Result<bool> {
        if let Some(&e) = circle.edges().iter().find(|&&e| e >= self.graph.edge_count()) {
            return Err(Error::InvalidCircle(format!("edge {e} is not in the graph")));
        }
        let rebuilt = Circle::from_edge_set(&self.graph, circle.edge_set())?;
        if rebuilt != *circle {
            return Err(Error::InvalidCircle("not in canonical form for this graph".into()));
        }
        Ok(self.circle_gain(circle) == self.group.identity())
    }

    /// Balance by spanning-forest gain consistency.
    pub fn is_balanced_subgraph(&self, sub: &Subgraph) -> bool {
        self.potential(sub).is_ok()
    }

    /// A potential function for a balanced subgraph: on each component the
    /// smallest vertex gets the identity and `theta(w) = theta(v) phi(e; v, w)`
    /// along a spanning tree. Fails with the first inconsistent edge.
    pub fn potential(&self, sub: &Subgraph) -> Result<PotentialFunction> {
        let n = self.graph.vertex_count();
        let mut theta = PotentialFunction::identity(n, Bits::EMPTY);
        let mut stack = Vec::new();
        for root in sub.vertices() {
            if theta.domain().contains(root) {
                continue;
            }
            theta.set(root, self.group.identity());
            stack.push(root);
            while let Some(v) = stack.pop() {
                let tv = theta.value(v);
                for &(e, w) in self.graph.incident(v) {
                    if !sub.edges().contains(e) {
                        continue;
                    }
                    let expected = self.group.mul(tv, self.oriented_gain(e, v));
                    match theta.get(w) {
                        Some(tw) if tw != expected => return Err(Error::Unbalanced { edge: e }),
                        Some(_) => {}
                        None => {
                            theta.set(w, expected);
                            stack.push(w);
                        }
                    }
                }
            }
        }
        Ok(theta)
    }

    /// `Phi^zeta`: gain `zeta(v)^{-1} phi(e; v, w) zeta(w)`. `zeta` must be
    /// defined on every vertex.
    pub fn switch(&self, zeta: &PotentialFunction) -> Result<GainGraph> {
        if let Some(v) = (self.graph.all_vertices() - zeta.domain()).first() {
            return Err(Error::PotentialDomain(format!("switching function undefined at vertex {v}")));
        }
        let gains = self
            .graph
            .edges()
            .iter()
            .zip(&self.gains)
            .map(|(e, &g)| self.group.mul(self.group.ldiv(zeta.value(e.tail), g), zeta.value(e.head)))
            .collect();
        Ok(GainGraph { graph: self.graph.clone(), group: self.group.clone(), gains })
    }

    /// `B(Phi)`, in the canonical circle order.
    pub fn balanced_circles(&self, limits: &Limits) -> Result<Vec<Circle>> {
        let circles = self.graph.circles(limits)?;
        Ok(circles.into_iter().filter(|c| self.circle_gain(c) == self.group.identity()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn z(n: usize) -> GroupTable {
        GroupTable::cyclic(n).unwrap()
    }

    fn el(g: &GroupTable, i: usize) -> GroupElement {
        g.element(i).unwrap()
    }

    fn triangle(group: &GroupTable, gains: [usize; 3]) -> GainGraph {
        let g = Multigraph::from_indices(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        GainGraph::new(g, group.clone(), gains.iter().map(|&x| el(group, x)).collect()).unwrap()
    }

    #[test]
    fn expansion_sizes() {
        let k3 = Multigraph::complete(3).unwrap();
        let k4 = Multigraph::complete(4).unwrap();
        let e = GainGraph::group_expansion(&k3, &z(2)).unwrap();
        assert_eq!((e.graph().vertex_count(), e.graph().edge_count()), (3, 6));
        assert_eq!(GainGraph::group_expansion(&k4, &z(6)).unwrap().graph().edge_count(), 36);
        let trivial = GainGraph::group_expansion(&k4, &z(1)).unwrap();
        assert!(trivial.gains().iter().all(|&g| g == GroupElement::IDENTITY));
        let looped = Multigraph::from_indices(1, &[(0, 0)]).unwrap();
        assert_eq!(GainGraph::group_expansion(&looped, &z(2)), Err(Error::LoopsInExpansion));
    }

    #[test]
    fn path_gains() {
        let z6 = z(6);
        let g = Multigraph::from_indices(3, &[(0, 1), (1, 2)]).unwrap();
        let phi = GainGraph::new(g, z6.clone(), vec![el(&z6, 2), el(&z6, 3)]).unwrap();
        let w = Walk { vertices: vec![0, 1, 2], edges: vec![0, 1] };
        assert_eq!(phi.path_gain(&w).unwrap(), el(&z6, 5));
        let back = Walk { vertices: vec![1, 0], edges: vec![0] };
        assert_eq!(phi.path_gain(&back).unwrap(), el(&z6, 4));
        assert_eq!(phi.path_gain(&Walk::empty(2)).unwrap(), z6.identity());
        let broken = Walk { vertices: vec![0, 2], edges: vec![0] };
        assert!(matches!(phi.path_gain(&broken), Err(Error::BrokenWalk(_))));
    }

    #[test]
    fn balanced_circles_in_triangles_and_digons() {
        let z2 = z(2);
        let limits = Limits::default();
        let t0 = triangle(&z2, [0, 0, 0]);
        let t1 = triangle(&z2, [0, 0, 1]);
        let c = &t0.graph().circles(&limits).unwrap()[0];
        assert!(t0.is_balanced_circle(c).unwrap());
        assert!(!t1.is_balanced_circle(c).unwrap());

        let z6 = z(6);
        let digon = Multigraph::from_indices(2, &[(0, 1), (0, 1)]).unwrap();
        for (a, b) in [(3, 3), (2, 5)] {
            let phi = GainGraph::new(digon.clone(), z6.clone(), vec![el(&z6, a), el(&z6, b)]).unwrap();
            let c = &phi.graph().circles(&limits).unwrap()[0];
            assert_eq!(phi.is_balanced_circle(c).unwrap(), a == b);
        }
    }

    #[test]
    fn balance_and_potentials() {
        let z2 = z(2);
        let k3 = Multigraph::complete(3).unwrap();
        let phi = GainGraph::group_expansion(&k3, &z2).unwrap();
        assert!(phi.is_balanced_subgraph(&Subgraph::edgeless(phi.graph().all_vertices())));
        assert!(!phi.is_balanced_subgraph(&phi.graph().whole()));
        // gain-0 copies of 01, 02, 12 are edges 0, 2, 4
        let zero = phi.graph().subgraph(Bits::full(3), [0, 2, 4].into_iter().collect()).unwrap();
        assert!(phi.is_balanced_subgraph(&zero));
        let theta = phi.potential(&zero).unwrap();
        assert!((0..3).all(|v| theta.get(v) == Some(z2.identity())));

        let z6 = z(6);
        let edge = Multigraph::from_indices(2, &[(0, 1)]).unwrap();
        let one = GainGraph::new(edge, z6.clone(), vec![el(&z6, 2)]).unwrap();
        let th = one.potential(&one.graph().whole()).unwrap();
        assert_eq!((th.get(0), th.get(1)), (Some(el(&z6, 0)), Some(el(&z6, 2))));

        let bad = triangle(&z2, [0, 0, 1]);
        assert!(matches!(bad.potential(&bad.graph().whole()), Err(Error::Unbalanced { .. })));
    }

    #[test]
    fn switching() {
        let z6 = z(6);
        let edge = Multigraph::from_indices(2, &[(0, 1)]).unwrap();
        let phi = GainGraph::new(edge, z6.clone(), vec![el(&z6, 2)]).unwrap();
        let id = PotentialFunction::identity(2, Bits::full(2));
        assert_eq!(phi.switch(&id).unwrap(), phi);
        let zeta = PotentialFunction::from_pairs(2, [(0, el(&z6, 1)), (1, el(&z6, 0))]).unwrap();
        assert_eq!(phi.switch(&zeta).unwrap().gain(0), el(&z6, 1));
        let partial = PotentialFunction::from_pairs(2, [(0, el(&z6, 1))]).unwrap();
        assert!(phi.switch(&partial).is_err());
    }

    #[test]
    fn balanced_circle_sets() {
        let limits = Limits::default();
        let k3 = Multigraph::complete(3).unwrap();
        let k4 = Multigraph::complete(4).unwrap();
        let phi = GainGraph::group_expansion(&k3, &z(2)).unwrap();
        assert_eq!(phi.balanced_circles(&limits).unwrap().len(), 4);
        let trivial = GainGraph::group_expansion(&k4, &z(1)).unwrap();
        assert_eq!(trivial.balanced_circles(&limits).unwrap().len(), 7);
        let tree = GainGraph::group_expansion(&Multigraph::path(3).unwrap(), &z(1)).unwrap();
        assert!(tree.balanced_circles(&limits).unwrap().is_empty());
    }

    #[test]
    fn loops_balanced_iff_identity() {
        let z3 = z(3);
        let g = Multigraph::from_indices(1, &[(0, 0), (0, 0)]).unwrap();
        let phi = GainGraph::new(g, z3.clone(), vec![el(&z3, 0), el(&z3, 1)]).unwrap();
        let circles = phi.balanced_circles(&Limits::default()).unwrap();
        assert_eq!(circles.len(), 1);
        assert_eq!(circles[0].edges(), &[0]);
        let sub = phi.graph().subgraph(Bits::full(1), Bits::singleton(1)).unwrap();
        assert!(!phi.is_balanced_subgraph(&sub));
    }
}
