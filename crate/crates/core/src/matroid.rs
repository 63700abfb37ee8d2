//! Frame and lift matroids of induced subgraphs, and the frame and lift
//! Rhodes lattices built from their flats.
//!
//! An edge set `S` is read as the spanning subgraph `(X, S)` of the induced
//! subgraph on a vertex set `X`, so isolated vertices are components.
//!
//! * frame rank: `|X| - b(S)`, `b` counting balanced components;
//! * lift rank: `|X| - c(S) + delta(S)`, `delta(S) = 1` iff `S` is unbalanced.

use alloc::vec::Vec;

use crate::bits::{Bits, EdgeSet, VertexSet};
use crate::error::{guard, Error, Result};
use crate::latticekit::{FinitePoset, LatticeElement};
use crate::multigraph::Subgraph;
use crate::rhodes::{closed_family, BalancedHost};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MatroidKind {
    Frame,
    Lift,
}

fn check<H: BalancedHost + ?Sized>(host: &H, ground: VertexSet, edges: EdgeSet) -> Result<()> {
    let graph = host.graph();
    if let Some(v) = (ground - graph.all_vertices()).first() {
        return Err(Error::ForeignVertex(v));
    }
    if let Some(e) = (edges - graph.edges_within(ground)).first() {
        return Err(Error::ForeignEdge(e));
    }
    Ok(())
}

/// Components of `(ground, edges)` with balance flags.
fn components<H: BalancedHost + ?Sized>(host: &H, ground: VertexSet, edges: EdgeSet) -> Vec<(VertexSet, EdgeSet, bool)> {
    host.graph()
        .component_parts(&Subgraph::from_parts(ground, edges))
        .into_iter()
        .map(|(vs, es)| (vs, es, host.is_balanced(&Subgraph::from_parts(vs, es))))
        .collect()
}

pub fn frame_rank<H: BalancedHost + ?Sized>(host: &H, ground: VertexSet, edges: EdgeSet) -> Result<usize> {
    check(host, ground, edges)?;
    let balanced = components(host, ground, edges).iter().filter(|c| c.2).count();
    Ok(ground.len() - balanced)
}

pub fn lift_rank<H: BalancedHost + ?Sized>(host: &H, ground: VertexSet, edges: EdgeSet) -> Result<usize> {
    check(host, ground, edges)?;
    let parts = components(host, ground, edges);
    let delta = usize::from(parts.iter().any(|c| !c.2));
    Ok(ground.len() - parts.len() + delta)
}

pub fn rank<H: BalancedHost + ?Sized>(kind: MatroidKind, host: &H, ground: VertexSet, edges: EdgeSet) -> Result<usize> {
    match kind {
        MatroidKind::Frame => frame_rank(host, ground, edges),
        MatroidKind::Lift => lift_rank(host, ground, edges),
    }
}

/// `S` together with every edge of the induced subgraph on `ground` whose
/// addition keeps the rank, decided from the components of `S`:
///
/// * frame: an edge inside a component is spanned iff the component is
///   unbalanced or stays balanced with it; an edge between two components
///   iff both are unbalanced;
/// * lift: an edge between components is never spanned; one inside a
///   component is spanned iff `S` is unbalanced or `S + e` is balanced.
pub fn closure<H: BalancedHost + ?Sized>(kind: MatroidKind, host: &H, ground: VertexSet, edges: EdgeSet) -> Result<EdgeSet> {
    check(host, ground, edges)?;
    let graph = host.graph();
    let parts = components(host, ground, edges);
    let all_balanced = parts.iter().all(|c| c.2);
    let part_of = |v: usize| parts.iter().position(|c| c.0.contains(v)).expect("ground vertex");
    let mut closed = edges;
    for e in graph.edges_within(ground) - edges {
        let edge = graph.edge(e);
        let (a, b) = (part_of(edge.tail), part_of(edge.head));
        let spanned = if a == b {
            let (vs, es, balanced) = parts[a];
            let stays_balanced = || host.is_balanced(&Subgraph::from_parts(vs, es.with(e)));
            match kind {
                MatroidKind::Frame => !balanced || stays_balanced(),
                MatroidKind::Lift => !all_balanced || stays_balanced(),
            }
        } else {
            kind == MatroidKind::Frame && !parts[a].2 && !parts[b].2
        };
        if spanned {
            closed.insert(e);
        }
    }
    Ok(closed)
}

/// The closure straight from the rank function; the slow oracle.
pub fn closure_by_rank<H: BalancedHost + ?Sized>(
    kind: MatroidKind,
    host: &H,
    ground: VertexSet,
    edges: EdgeSet,
) -> Result<EdgeSet> {
    let r = rank(kind, host, ground, edges)?;
    let mut closed = edges;
    for e in host.graph().edges_within(ground) - edges {
        if rank(kind, host, ground, edges.with(e))? == r {
            closed.insert(e);
        }
    }
    Ok(closed)
}

pub fn is_flat<H: BalancedHost + ?Sized>(kind: MatroidKind, host: &H, ground: VertexSet, edges: EdgeSet) -> Result<bool> {
    Ok(closure(kind, host, ground, edges)? == edges)
}

/// All flats of the induced subgraph on `ground`, by breadth-first closure
/// expansion from `closure(∅)`. Sorted.
pub fn flats<H: BalancedHost + ?Sized>(
    kind: MatroidKind,
    host: &H,
    ground: VertexSet,
    limits: &Limits,
) -> Result<Vec<EdgeSet>> {
    let candidates = host.graph().edges_within(ground);
    guard("max_edges", limits.max_edges, candidates.len())?;
    let start = Subgraph::from_parts(ground, closure(kind, host, ground, Bits::EMPTY)?);
    let found = closed_family(candidates, start, limits.max_elements, |s| {
        closure(kind, host, ground, s.edges()).map(|f| Some(Subgraph::from_parts(ground, f)))
    })?;
    let mut out: Vec<EdgeSet> = found.into_iter().map(|s| s.edges()).collect();
    out.sort();
    Ok(out)
}

/// All flats by testing every edge subset against the rank function.
pub fn flats_brute_force<H: BalancedHost + ?Sized>(
    kind: MatroidKind,
    host: &H,
    ground: VertexSet,
    limits: &Limits,
) -> Result<Vec<EdgeSet>> {
    let candidates = host.graph().edges_within(ground);
    guard("max_brute_force_edges", limits.max_brute_force_edges, candidates.len())?;
    let mut out = Vec::new();
    for s in candidates.subsets() {
        if closure_by_rank(kind, host, ground, s)? == s {
            out.push(s);
        }
    }
    out.sort();
    Ok(out)
}

/// Every `(X, F)` with `F` a flat of the induced subgraph on `X`, sorted.
pub fn rhodes_lattice_elements<H: BalancedHost + ?Sized>(
    kind: MatroidKind,
    host: &H,
    limits: &Limits,
) -> Result<Vec<Subgraph>> {
    let graph = host.graph();
    guard("max_vertices", limits.max_vertices, graph.vertex_count())?;
    let mut out = Vec::new();
    for x in graph.all_vertices().subsets() {
        out.extend(flats(kind, host, x, limits)?.into_iter().map(|f| Subgraph::from_parts(x, f)));
        guard("max_elements", limits.max_elements, out.len())?;
    }
    out.sort();
    Ok(out)
}

/// `R^F`: frame flats of all induced subgraphs, ordered by containment.
pub fn frame_rhodes_lattice<H: BalancedHost + ?Sized>(host: &H, limits: &Limits) -> Result<FinitePoset<LatticeElement>> {
    let elements = rhodes_lattice_elements(MatroidKind::Frame, host, limits)?;
    Ok(FinitePoset::by_containment(elements.into_iter().map(LatticeElement::Subgraph).collect()))
}

/// `R^L`: lift flats of all induced subgraphs, ordered by containment.
pub fn lift_rhodes_lattice<H: BalancedHost + ?Sized>(host: &H, limits: &Limits) -> Result<FinitePoset<LatticeElement>> {
    let elements = rhodes_lattice_elements(MatroidKind::Lift, host, limits)?;
    Ok(FinitePoset::by_containment(elements.into_iter().map(LatticeElement::Subgraph).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupTable;
    use crate::gain::GainGraph;
    use crate::multigraph::Multigraph;
    use alloc::vec;

    fn z2k3() -> GainGraph {
        GainGraph::group_expansion(&Multigraph::complete(3).unwrap(), &GroupTable::cyclic(2).unwrap()).unwrap()
    }

    fn parallel_pair() -> GainGraph {
        let z2 = GroupTable::cyclic(2).unwrap();
        let g = Multigraph::from_indices(2, &[(0, 1), (0, 1)]).unwrap();
        GainGraph::new(g, z2.clone(), vec![z2.identity(), z2.element(1).unwrap()]).unwrap()
    }

    fn set(xs: &[usize]) -> Bits {
        xs.iter().copied().collect()
    }

    #[test]
    fn rank_examples() {
        let phi = z2k3();
        let all = set(&[0, 1, 2]);
        // edges 0,1 are the gain-0 and gain-1 copies of 01
        for kind in [MatroidKind::Frame, MatroidKind::Lift] {
            assert_eq!(rank(kind, &phi, all, Bits::EMPTY).unwrap(), 0);
            assert_eq!(rank(kind, &phi, all, set(&[0, 1])).unwrap(), 2);
        }
        assert_eq!(frame_rank(&phi, all, phi.graph().all_edges()).unwrap(), 3);
        assert_eq!(lift_rank(&phi, all, set(&[0, 2, 4])).unwrap(), 2);
        assert_eq!(frame_rank(&phi, all, set(&[0, 2, 4])).unwrap(), 2);
        assert_eq!(frame_rank(&phi, set(&[0, 1]), set(&[2])), Err(Error::ForeignEdge(2)));
    }

    #[test]
    fn closure_examples() {
        let phi = z2k3();
        let all = set(&[0, 1, 2]);
        for kind in [MatroidKind::Frame, MatroidKind::Lift] {
            assert_eq!(closure(kind, &phi, all, Bits::EMPTY).unwrap(), Bits::EMPTY);
            assert_eq!(closure(kind, &phi, all, set(&[0, 4])).unwrap(), set(&[0, 2, 4]));
            assert_eq!(closure_by_rank(kind, &phi, all, set(&[0, 4])).unwrap(), set(&[0, 2, 4]));
        }
        // an unbalanced digon spans everything on its vertices in both
        assert_eq!(closure(MatroidKind::Frame, &phi, all, set(&[0, 1])).unwrap(), set(&[0, 1]));
        assert_eq!(closure(MatroidKind::Lift, &phi, all, set(&[0, 1])).unwrap(), set(&[0, 1]));
        // frame: two unbalanced digons span the edges joining them; lift does not add them
        let phi4 = GainGraph::group_expansion(&Multigraph::complete(4).unwrap(), &GroupTable::cyclic(2).unwrap()).unwrap();
        let v4 = set(&[0, 1, 2, 3]);
        let digons = set(&[0, 1, 10, 11]);
        assert_eq!(closure(MatroidKind::Frame, &phi4, v4, digons).unwrap(), phi4.graph().all_edges());
        assert_eq!(closure(MatroidKind::Lift, &phi4, v4, digons).unwrap(), digons);
    }

    #[test]
    fn balanced_loops_are_in_every_closure() {
        let z3 = GroupTable::cyclic(3).unwrap();
        let g = Multigraph::from_indices(2, &[(0, 0), (0, 0), (0, 1)]).unwrap();
        let phi = GainGraph::new(g, z3.clone(), vec![z3.identity(), z3.element(1).unwrap(), z3.identity()]).unwrap();
        let v = set(&[0, 1]);
        for kind in [MatroidKind::Frame, MatroidKind::Lift] {
            assert_eq!(rank(kind, &phi, v, set(&[0])).unwrap(), 0);
            assert!(closure(kind, &phi, v, Bits::EMPTY).unwrap().contains(0));
            assert_eq!(closure(kind, &phi, v, set(&[1])).unwrap(), closure_by_rank(kind, &phi, v, set(&[1])).unwrap());
        }
    }

    #[test]
    fn flats_of_a_parallel_pair() {
        let phi = parallel_pair();
        let limits = Limits::default();
        let expected = vec![Bits::EMPTY, set(&[0]), set(&[1]), set(&[0, 1])];
        for kind in [MatroidKind::Frame, MatroidKind::Lift] {
            assert_eq!(flats(kind, &phi, set(&[0, 1]), &limits).unwrap(), expected);
            assert_eq!(flats_brute_force(kind, &phi, set(&[0, 1]), &limits).unwrap(), expected);
        }
        assert_eq!(frame_rhodes_lattice(&phi, &limits).unwrap().len(), 7);
    }

    #[test]
    fn edgeless_host_has_only_the_empty_flat() {
        let z2 = GroupTable::cyclic(2).unwrap();
        let phi = GainGraph::new(Multigraph::from_indices(3, &[]).unwrap(), z2, vec![]).unwrap();
        let limits = Limits::default();
        assert_eq!(flats(MatroidKind::Lift, &phi, set(&[0, 1, 2]), &limits).unwrap(), vec![Bits::EMPTY]);
    }

    #[test]
    fn bfs_flats_match_brute_force_on_z2k3() {
        let phi = z2k3();
        let limits = Limits::default();
        for kind in [MatroidKind::Frame, MatroidKind::Lift] {
            for x in phi.graph().all_vertices().subsets() {
                assert_eq!(flats(kind, &phi, x, &limits).unwrap(), flats_brute_force(kind, &phi, x, &limits).unwrap());
            }
        }
    }
}
