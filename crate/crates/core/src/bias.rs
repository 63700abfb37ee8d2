//! Biased graphs: a graph plus an explicit class of balanced circles in
//! which no theta subgraph contains exactly two balanced circles.
//!
//! The class is stored extensionally as circle edge sets; a biased graph
//! built from gains keeps no reference to them.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::{Bits, EdgeSet, VertexSet};
use crate::error::{Error, Result};
use crate::gain::GainGraph;
use crate::multigraph::{Circle, Multigraph, Subgraph, Theta};
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiasedGraph {
    graph: Multigraph,
    /// Every circle of the graph.
    circles: Vec<Circle>,
    balanced: BTreeSet<EdgeSet>,
    /// Balanced circles as `(edges, vertices)`, in circle order.
    balanced_list: Vec<(EdgeSet, VertexSet)>,
}

impl BiasedGraph {
    /// Validates membership of every circle and the theta condition.
    pub fn new(graph: Multigraph, balanced: impl IntoIterator<Item = Circle>, limits: &Limits) -> Result<Self> {
        let mut set = BTreeSet::new();
        for c in balanced {
            let rebuilt = Circle::from_edge_set(&graph, c.edge_set())?;
            if rebuilt != c {
                return Err(Error::InvalidCircle(format!("{:?} is not a canonical circle of the graph", c.edges())));
            }
            set.insert(c.edge_set());
        }
        let bias = Self::assemble(graph, set, limits)?;
        if let Some(theta) = theta_violation(&bias.graph, &bias.balanced, limits)? {
            return Err(Error::ThetaViolation(format!(
                "theta on branch vertices {:?} has exactly two balanced circles",
                theta.ends
            )));
        }
        Ok(bias)
    }

    /// `<Phi> = (Gamma, B(Phi))`, theta condition checked.
    pub fn from_gains(phi: &GainGraph, limits: &Limits) -> Result<Self> {
        let bias = Self::from_gains_unvalidated(phi, limits)?;
        if let Some(theta) = theta_violation(&bias.graph, &bias.balanced, limits)? {
            return Err(Error::ThetaViolation(format!("gain-derived bias fails on theta {:?}", theta.ends)));
        }
        Ok(bias)
    }

    /// `<Phi>` without the theta check (which always holds for gains). Only
    /// the circle enumeration guard applies.
    pub fn from_gains_unvalidated(phi: &GainGraph, limits: &Limits) -> Result<Self> {
        let balanced = phi.balanced_circles(limits)?.into_iter().map(|c| c.edge_set()).collect();
        Self::assemble(phi.graph().clone(), balanced, limits)
    }

    fn assemble(graph: Multigraph, balanced: BTreeSet<EdgeSet>, limits: &Limits) -> Result<Self> {
        let circles = graph.circles(limits)?;
        let balanced_list = circles
            .iter()
            .filter(|c| balanced.contains(&c.edge_set()))
            .map(|c| (c.edge_set(), c.vertex_set()))
            .collect();
        Ok(BiasedGraph { graph, circles, balanced, balanced_list })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn balanced_circles(&self) -> impl Iterator<Item = &Circle> {
        self.circles.iter().filter(|c| self.balanced.contains(&c.edge_set()))
    }

    pub fn is_balanced_circle(&self, edges: EdgeSet) -> bool {
        self.balanced.contains(&edges)
    }

    /// Balance via the fundamental circles of a spanning forest.
    pub fn is_balanced(&self, sub: &Subgraph) -> bool {
        let forest = Forest::new(&self.graph, sub.vertices(), sub.edges());
        (sub.edges() - forest.tree_edges)
            .iter()
            .all(|e| forest.fundamental_circle(&self.graph, e).is_some_and(|c| self.balanced.contains(&c)))
    }

    /// Balance by checking every circle of the subgraph; the slow oracle.
    pub fn is_balanced_by_enumeration(&self, sub: &Subgraph) -> bool {
        self.circles
            .iter()
            .filter(|c| c.edge_set().is_subset(sub.edges()))
            .all(|c| self.balanced.contains(&c.edge_set()))
    }

    /// Adds every edge that completes a balanced circle lying in
    /// `(vertices, edges)` but for that edge, repeated to a fixpoint.
    pub fn complete_balanced_circles(&self, vertices: VertexSet, mut edges: EdgeSet) -> EdgeSet {
        loop {
            let before = edges;
            for &(ce, cv) in &self.balanced_list {
                if cv.is_subset(vertices) && (ce - edges).len() == 1 {
                    edges = edges | ce;
                }
            }
            if edges == before {
                return edges;
            }
        }
    }

    /// Components of `(ground, edges)` with their balance flags.
    pub fn component_balance(&self, ground: VertexSet, edges: EdgeSet) -> Vec<(VertexSet, EdgeSet, bool)> {
        let forest = Forest::new(&self.graph, ground, edges);
        let mut parts = self.graph.component_parts(&Subgraph::from_parts(ground, edges));
        parts.sort_by_key(|p| p.0.first());
        parts
            .into_iter()
            .map(|(vs, es)| {
                let ok = (es - forest.tree_edges)
                    .iter()
                    .all(|e| forest.fundamental_circle(&self.graph, e).is_some_and(|c| self.balanced.contains(&c)));
                (vs, es, ok)
            })
            .collect()
    }
}

/// True iff every theta has 0, 1 or 3 balanced circles.
pub fn validate_theta(graph: &Multigraph, balanced: &BTreeSet<EdgeSet>, limits: &Limits) -> Result<bool> {
    Ok(theta_violation(graph, balanced, limits)?.is_none())
}

/// The first theta with exactly two balanced circles, if any.
pub fn theta_violation(graph: &Multigraph, balanced: &BTreeSet<EdgeSet>, limits: &Limits) -> Result<Option<Theta>> {
    let thetas = graph.theta_subgraphs(limits)?;
    Ok(thetas.into_iter().find(|t| t.circles().iter().filter(|c| balanced.contains(c)).count() == 2))
}

/// A breadth-first spanning forest of `(vertices, edges)`.
pub(crate) struct Forest {
    /// Parent `(edge, vertex)` of each non-root vertex.
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
    pub(crate) tree_edges: EdgeSet,
}

impl Forest {
    pub(crate) fn new(graph: &Multigraph, vertices: VertexSet, edges: EdgeSet) -> Forest {
        let n = graph.vertex_count();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = Bits::EMPTY;
        let mut tree_edges = Bits::EMPTY;
        let mut queue = alloc::collections::VecDeque::new();
        for root in vertices {
            if seen.contains(root) {
                continue;
            }
            seen.insert(root);
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                for &(e, w) in graph.incident(v) {
                    if edges.contains(e) && !seen.contains(w) {
                        seen.insert(w);
                        parent[w] = Some((e, v));
                        depth[w] = depth[v] + 1;
                        tree_edges.insert(e);
                        queue.push_back(w);
                    }
                }
            }
        }
        Forest { parent, depth, tree_edges }
    }

    /// Edges of the tree path between `a` and `b`, if they share a tree.
    pub(crate) fn tree_path(&self, mut a: usize, mut b: usize) -> Option<EdgeSet> {
        let mut path = Bits::EMPTY;
        while self.depth[a] > self.depth[b] {
            let (e, p) = self.parent[a]?;
            path.insert(e);
            a = p;
        }
        while self.depth[b] > self.depth[a] {
            let (e, p) = self.parent[b]?;
            path.insert(e);
            b = p;
        }
        while a != b {
            let (ea, pa) = self.parent[a]?;
            let (eb, pb) = self.parent[b]?;
            path.insert(ea);
            path.insert(eb);
            a = pa;
            b = pb;
        }
        Some(path)
    }

    /// The circle formed by edge `e` and the tree path joining its ends.
    pub(crate) fn fundamental_circle(&self, graph: &Multigraph, e: usize) -> Option<EdgeSet> {
        let edge = graph.edge(e);
        self.tree_path(edge.tail, edge.head).map(|p| p.with(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupTable;

    fn three_parallel() -> Multigraph {
        Multigraph::from_indices(2, &[(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    fn digon(g: &Multigraph, a: usize, b: usize) -> Circle {
        Circle::from_edge_set(g, Bits::singleton(a).with(b)).unwrap()
    }

    #[test]
    fn theta_condition_on_parallel_edges() {
        let g = three_parallel();
        let limits = Limits::default();
        let two: BTreeSet<EdgeSet> = [digon(&g, 0, 1), digon(&g, 0, 2)].iter().map(Circle::edge_set).collect();
        assert!(!validate_theta(&g, &two, &limits).unwrap());
        let three: BTreeSet<EdgeSet> = g.circles(&limits).unwrap().iter().map(Circle::edge_set).collect();
        assert!(validate_theta(&g, &three, &limits).unwrap());
        assert!(matches!(
            BiasedGraph::new(g.clone(), [digon(&g, 0, 1), digon(&g, 1, 2)], &limits),
            Err(Error::ThetaViolation(_))
        ));
        assert!(BiasedGraph::new(g.clone(), [digon(&g, 0, 1)], &limits).is_ok());
    }

    #[test]
    fn gain_biases() {
        let limits = Limits::default();
        let k3 = Multigraph::complete(3).unwrap();
        let z2 = GainGraph::group_expansion(&k3, &GroupTable::cyclic(2).unwrap()).unwrap();
        let bias = BiasedGraph::from_gains(&z2, &limits).unwrap();
        assert_eq!(bias.balanced_circles().count(), 4);
        let z1 = GainGraph::group_expansion(&Multigraph::complete(4).unwrap(), &GroupTable::cyclic(1).unwrap()).unwrap();
        let all = BiasedGraph::from_gains(&z1, &limits).unwrap();
        assert_eq!(all.balanced_circles().count(), all.circles().len());
    }

    #[test]
    fn vacuous_theta_condition() {
        // C4 has no theta: any class of its single circle is fine.
        let c4 = Multigraph::cycle(4).unwrap();
        let limits = Limits::default();
        assert!(c4.theta_subgraphs(&limits).unwrap().is_empty());
        let circle = c4.circles(&limits).unwrap();
        assert!(BiasedGraph::new(c4.clone(), circle.clone(), &limits).is_ok());
        assert!(BiasedGraph::new(c4, [], &limits).is_ok());
    }

    #[test]
    fn balance_of_subgraphs() {
        let g = three_parallel();
        let limits = Limits::default();
        let bias = BiasedGraph::new(g.clone(), [digon(&g, 0, 1)], &limits).unwrap();
        let edgeless = Subgraph::edgeless(g.all_vertices());
        assert!(bias.is_balanced(&edgeless));
        let bad = g.subgraph(g.all_vertices(), Bits::singleton(0).with(2)).unwrap();
        assert!(!bias.is_balanced(&bad));
        assert!(!bias.is_balanced_by_enumeration(&bad));
        let good = g.subgraph(g.all_vertices(), Bits::singleton(0).with(1)).unwrap();
        assert!(bias.is_balanced(&good));
    }

    #[test]
    fn foreign_circles_rejected() {
        let g = three_parallel();
        let k3 = Multigraph::complete(3).unwrap();
        let tri = k3.circles(&Limits::default()).unwrap();
        assert!(BiasedGraph::new(g, tri, &Limits::default()).is_err());
    }
}
