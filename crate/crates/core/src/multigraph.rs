//! Finite graphs with loops and parallel edges.
//!
//! Vertices and edges carry external integer ids but are addressed internally
//! by their position in ascending id order, so "smallest index" and "smallest
//! id" coincide. Each edge has a fixed canonical orientation `tail -> head`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::{Bits, EdgeSet, VertexSet};
use crate::error::{guard, Error, Result};
use crate::partition::PartialPartition;
use crate::unionfind::UnionFind;
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: u32,
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    /// The endpoint opposite `v` (`v` itself for loops).
    pub fn other(&self, v: usize) -> usize {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }

    pub fn ends(&self) -> VertexSet {
        Bits::singleton(self.tail).with(self.head)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    vertex_ids: Vec<u32>,
    edges: Vec<Edge>,
    /// Per vertex: `(edge index, other endpoint)`; loops appear once.
    incidence: Vec<Vec<(usize, usize)>>,
}

impl Multigraph {
    /// Builds a graph from vertex ids and `(edge id, tail id, head id)`
    /// triples. Both lists are sorted by id.
    pub fn new(vertex_ids: impl IntoIterator<Item = u32>, edges: impl IntoIterator<Item = (u32, u32, u32)>) -> Result<Self> {
        let mut vertex_ids: Vec<u32> = vertex_ids.into_iter().collect();
        vertex_ids.sort_unstable();
        if vertex_ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("duplicate vertex id".into()));
        }
        if vertex_ids.len() > Bits::CAPACITY {
            return Err(Error::InvalidGraph(format!("more than {} vertices", Bits::CAPACITY)));
        }
        let position: BTreeMap<u32, usize> = vertex_ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut raw: Vec<(u32, u32, u32)> = edges.into_iter().collect();
        raw.sort_unstable_by_key(|e| e.0);
        if raw.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidGraph("duplicate edge id".into()));
        }
        if raw.len() > Bits::CAPACITY {
            return Err(Error::InvalidGraph(format!("more than {} edges", Bits::CAPACITY)));
        }
        let mut out = Vec::with_capacity(raw.len());
        for (id, t, h) in raw {
            let tail = *position.get(&t).ok_or(Error::ForeignVertex(t as usize))?;
            let head = *position.get(&h).ok_or(Error::ForeignVertex(h as usize))?;
            out.push(Edge { id, tail, head });
        }
        Ok(Self::assemble(vertex_ids, out))
    }

    /// Vertices `0..n`, edge `i` joining `ends[i]`, ids equal to positions.
    pub fn from_indices(n: usize, ends: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            0..n as u32,
            ends.iter().enumerate().map(|(i, &(t, h))| (i as u32, t as u32, h as u32)),
        )
    }

    fn assemble(vertex_ids: Vec<u32>, edges: Vec<Edge>) -> Self {
        let mut incidence = vec![Vec::new(); vertex_ids.len()];
        for (i, e) in edges.iter().enumerate() {
            incidence[e.tail].push((i, e.head));
            if !e.is_loop() {
                incidence[e.head].push((i, e.tail));
            }
        }
        Multigraph { vertex_ids, edges, incidence }
    }

    /// The complete graph `K_n` with edges `ij`, `i < j`, in lexicographic order.
    pub fn complete(n: usize) -> Result<Self> {
        let ends: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self::from_indices(n, &ends)
    }

    /// The circle `C_n` (`n >= 1`): edges `i -> i+1` and `n-1 -> 0`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("C_0 is not a graph".into()));
        }
        let ends: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_indices(n, &ends)
    }

    /// The path `P_n` with `n` edges and `n + 1` vertices.
    pub fn path(n: usize) -> Result<Self> {
        let ends: Vec<_> = (0..n).map(|i| (i, i + 1)).collect();
        Self::from_indices(n + 1, &ends)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> &[u32] {
        &self.vertex_ids
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.incidence[v]
    }

    pub fn vertex_index(&self, id: u32) -> Option<usize> {
        self.vertex_ids.binary_search(&id).ok()
    }

    pub fn edge_index(&self, id: u32) -> Option<usize> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    pub fn all_vertices(&self) -> VertexSet {
        Bits::full(self.vertex_count())
    }

    pub fn all_edges(&self) -> EdgeSet {
        Bits::full(self.edge_count())
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    /// `E:I`, the edges with every endpoint in `vertices`.
    pub fn edges_within(&self, vertices: VertexSet) -> EdgeSet {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| vertices.contains(e.tail) && vertices.contains(e.head))
            .map(|(i, _)| i)
            .collect()
    }

    /// The vertices touched by `edges`.
    pub fn endpoints(&self, edges: EdgeSet) -> VertexSet {
        edges.iter().fold(Bits::EMPTY, |acc, e| acc | self.edges[e].ends())
    }

    /// A validated subgraph.
    pub fn subgraph(&self, vertices: VertexSet, edges: EdgeSet) -> Result<Subgraph> {
        if let Some(v) = (vertices - self.all_vertices()).first() {
            return Err(Error::ForeignVertex(v));
        }
        if let Some(e) = (edges - self.all_edges()).first() {
            return Err(Error::ForeignEdge(e));
        }
        if let Some(e) = edges.iter().find(|&e| !self.edges[e].ends().is_subset(vertices)) {
            return Err(Error::InvalidGraph(format!("edge {e} has an endpoint outside the vertex set")));
        }
        Ok(Subgraph { vertices, edges })
    }

    /// `Gamma:I`.
    pub fn induced_subgraph(&self, vertices: VertexSet) -> Result<Subgraph> {
        if let Some(v) = (vertices - self.all_vertices()).first() {
            return Err(Error::ForeignVertex(v));
        }
        Ok(Subgraph { vertices, edges: self.edges_within(vertices) })
    }

    /// The whole graph as a subgraph.
    pub fn whole(&self) -> Subgraph {
        Subgraph { vertices: self.all_vertices(), edges: self.all_edges() }
    }

    /// Connected components as `(vertices, edges)` pairs, ordered by their
    /// smallest vertex. Isolated vertices are components.
    pub fn component_parts(&self, sub: &Subgraph) -> Vec<(VertexSet, EdgeSet)> {
        let mut uf = UnionFind::new(self.vertex_count());
        for e in sub.edges {
            let edge = &self.edges[e];
            uf.union(edge.tail, edge.head);
        }
        let mut by_root: BTreeMap<usize, (VertexSet, EdgeSet)> = BTreeMap::new();
        for v in sub.vertices {
            by_root.entry(uf.find(v)).or_default().0.insert(v);
        }
        for e in sub.edges {
            let r = uf.find(self.edges[e].tail);
            by_root.get_mut(&r).expect("endpoint in vertex set").1.insert(e);
        }
        let mut parts: Vec<_> = by_root.into_values().collect();
        parts.sort_by_key(|p| p.0.first());
        parts
    }

    /// `pi(Upsilon)`: the partition of the vertex set into components.
    pub fn components(&self, sub: &Subgraph) -> PartialPartition {
        PartialPartition::from_sorted_unchecked(
            self.vertex_count(),
            self.component_parts(sub).into_iter().map(|p| p.0).collect(),
        )
    }

    /// Every circle exactly once, in canonical form, sorted by edge set.
    pub fn circles(&self, limits: &Limits) -> Result<Vec<Circle>> {
        guard("max_edges", limits.max_edges, self.edge_count())?;
        let mut out = Vec::new();
        for (e0, edge) in self.edges.iter().enumerate() {
            if edge.is_loop() {
                out.push(Circle { vertices: vec![edge.tail], edges: vec![e0], edge_set: Bits::singleton(e0) });
                guard("max_circles", limits.max_circles, out.len())?;
                continue;
            }
            // Circles whose smallest edge is e0, traversed tail -> head first.
            let mut vpath = vec![edge.tail, edge.head];
            let mut epath = vec![e0];
            let visited = edge.ends();
            self.circle_dfs(e0, edge.tail, visited, &mut vpath, &mut epath, &mut out, limits)?;
        }
        out.sort_by_key(|c| c.edge_set);
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn circle_dfs(
        &self,
        e0: usize,
        target: usize,
        visited: VertexSet,
        vpath: &mut Vec<usize>,
        epath: &mut Vec<usize>,
        out: &mut Vec<Circle>,
        limits: &Limits,
    ) -> Result<()> {
        let cur = *vpath.last().expect("nonempty path");
        for &(e, w) in &self.incidence[cur] {
            if e <= e0 || w == cur {
                continue;
            }
            if w == target {
                epath.push(e);
                out.push(Circle::canonical(self, &vpath[..], epath));
                epath.pop();
                guard("max_circles", limits.max_circles, out.len())?;
            } else if !visited.contains(w) {
                vpath.push(w);
                epath.push(e);
                self.circle_dfs(e0, target, visited.with(w), vpath, epath, out, limits)?;
                vpath.pop();
                epath.pop();
            }
        }
        Ok(())
    }

    /// Every theta subgraph exactly once, ordered by branch vertices and paths.
    pub fn theta_subgraphs(&self, limits: &Limits) -> Result<Vec<Theta>> {
        guard("max_edges", limits.max_edges, self.edge_count())?;
        let n = self.vertex_count();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let paths = self.simple_paths(u, v);
                let words = paths.len().div_ceil(64);
                // compat[i]: paths j > i internally disjoint from path i
                let compat: Vec<Vec<u64>> = paths
                    .iter()
                    .enumerate()
                    .map(|(i, p)| {
                        let mut row = vec![0u64; words];
                        for (j, q) in paths.iter().enumerate().skip(i + 1) {
                            if p.edges.is_disjoint(q.edges) && p.interior.is_disjoint(q.interior) {
                                row[j / 64] |= 1 << (j % 64);
                            }
                        }
                        row
                    })
                    .collect();
                for i in 0..paths.len() {
                    for j in ones(&compat[i]) {
                        for k in ones_and(&compat[i], &compat[j]) {
                            out.push(Theta { ends: (u, v), paths: [paths[i].edges, paths[j].edges, paths[k].edges] });
                            guard("max_thetas", limits.max_thetas, out.len())?;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Simple `u`-`v` paths (`u != v`), sorted by edge set.
    fn simple_paths(&self, u: usize, v: usize) -> Vec<SimplePath> {
        fn walk(g: &Multigraph, cur: usize, v: usize, visited: VertexSet, edges: EdgeSet, interior: VertexSet, out: &mut Vec<SimplePath>) {
            for &(e, w) in &g.incidence[cur] {
                if w == cur {
                    continue;
                }
                if w == v {
                    out.push(SimplePath { edges: edges.with(e), interior });
                } else if !visited.contains(w) {
                    walk(g, w, v, visited.with(w), edges.with(e), interior.with(w), out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, u, v, Bits::singleton(u).with(v), Bits::EMPTY, Bits::EMPTY, &mut out);
        out.sort_by_key(|p| p.edges);
        out
    }
}

struct SimplePath {
    edges: EdgeSet,
    interior: VertexSet,
}

fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| Bits::from_word(word as u128).iter().map(move |b| w * 64 + b))
}

fn ones_and<'a>(a: &'a [u64], b: &'a [u64]) -> impl Iterator<Item = usize> + 'a {
    a.iter()
        .zip(b)
        .enumerate()
        .flat_map(|(w, (&x, &y))| Bits::from_word((x & y) as u128).iter().map(move |b| w * 64 + b))
}

/// A `(vertex set, edge set)` pair of some host graph. Isolated vertices are
/// significant: subgraphs with equal edge sets and different vertex sets are
/// different.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgraph {
    vertices: VertexSet,
    edges: EdgeSet,
}

impl Subgraph {
    pub const EMPTY: Subgraph = Subgraph { vertices: Bits::EMPTY, edges: Bits::EMPTY };

    pub(crate) fn from_parts(vertices: VertexSet, edges: EdgeSet) -> Self {
        Subgraph { vertices, edges }
    }

    /// An edgeless subgraph; valid in any host containing the vertices.
    pub fn edgeless(vertices: VertexSet) -> Self {
        Subgraph { vertices, edges: Bits::EMPTY }
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn edges(&self) -> EdgeSet {
        self.edges
    }

    pub fn is_subgraph_of(&self, other: &Subgraph) -> bool {
        self.vertices.is_subset(other.vertices) && self.edges.is_subset(other.edges)
    }

    pub fn intersection(&self, other: &Subgraph) -> Subgraph {
        Subgraph { vertices: self.vertices & other.vertices, edges: self.edges & other.edges }
    }

    pub fn union(&self, other: &Subgraph) -> Subgraph {
        Subgraph { vertices: self.vertices | other.vertices, edges: self.edges | other.edges }
    }

    /// Same vertex set, extra edges (endpoints are not checked).
    pub(crate) fn with_edges(&self, edges: EdgeSet) -> Subgraph {
        Subgraph { vertices: self.vertices, edges: self.edges | edges }
    }
}

/// A simple closed path: `edges[i]` joins `vertices[i]` to
/// `vertices[(i + 1) % len]`.
///
/// Canonical form: rotated so the smallest edge comes first, and oriented so
/// the second edge is the smaller of the two neighbours of the first; when
/// both neighbours coincide (loops and digons) the first edge is traversed
/// along its own orientation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circle {
    vertices: Vec<usize>,
    edges: Vec<usize>,
    edge_set: EdgeSet,
}

impl Circle {
    /// `vpath[0]` is the tail of `epath[0]` and the path closes back on it.
    fn canonical(graph: &Multigraph, vpath: &[usize], epath: &[usize]) -> Circle {
        let k = epath.len();
        let mut vertices = vpath[..k].to_vec();
        let mut edges = epath.to_vec();
        let start = (0..k).min_by_key(|&i| edges[i]).expect("nonempty circle");
        vertices.rotate_left(start);
        edges.rotate_left(start);
        if k >= 3 && edges[k - 1] < edges[1] {
            // reverse: traverse edges[0] backwards first
            let first = edges[0];
            edges[1..].reverse();
            let v0 = vertices[1];
            let mut vs = vec![v0];
            let mut cur = v0;
            for &e in &edges {
                cur = graph.edges[e].other(cur);
                vs.push(cur);
            }
            vs.pop();
            debug_assert_eq!(edges[0], first);
            vertices = vs;
        } else if k <= 2 && vertices[0] != graph.edges[edges[0]].tail {
            // digon: same edge order, opposite direction
            vertices.reverse();
        }
        let edge_set = edges.iter().copied().collect();
        Circle { vertices, edges, edge_set }
    }

    /// Parses an edge sequence that forms a simple closed path (any rotation
    /// or direction) into canonical form.
    pub fn from_edge_sequence(graph: &Multigraph, seq: &[usize]) -> Result<Circle> {
        if seq.is_empty() {
            return Err(Error::InvalidCircle("empty edge sequence".into()));
        }
        if let Some(&e) = seq.iter().find(|&&e| e >= graph.edge_count()) {
            return Err(Error::ForeignEdge(e));
        }
        let set: EdgeSet = seq.iter().copied().collect();
        if set.len() != seq.len() {
            return Err(Error::InvalidCircle("repeated edge".into()));
        }
        let c = Self::from_edge_set(graph, set)?;
        // The sequence order must also be a traversal of the circle.
        let k = seq.len();
        let pos = |e| c.edges.iter().position(|&x| x == e).expect("same edge set");
        let p0 = pos(seq[0]);
        let forward = (0..k).all(|i| c.edges[(p0 + i) % k] == seq[i]);
        let backward = (0..k).all(|i| c.edges[(p0 + k - i) % k] == seq[i]);
        if forward || backward {
            Ok(c)
        } else {
            Err(Error::InvalidCircle("edges are not listed in traversal order".into()))
        }
    }

    /// The circle whose edge set is `edges`, if `edges` is one.
    pub fn from_edge_set(graph: &Multigraph, edges: EdgeSet) -> Result<Circle> {
        let Some(e0) = edges.first() else {
            return Err(Error::InvalidCircle("empty edge set".into()));
        };
        if let Some(e) = (edges - graph.all_edges()).first() {
            return Err(Error::ForeignEdge(e));
        }
        let first = graph.edges[e0];
        if first.is_loop() {
            return if edges.len() == 1 {
                Ok(Circle { vertices: vec![first.tail], edges: vec![e0], edge_set: edges })
            } else {
                Err(Error::InvalidCircle("a loop together with other edges".into()))
            };
        }
        let mut vpath = vec![first.tail];
        let mut epath = vec![e0];
        let mut cur = first.head;
        let mut used = Bits::singleton(e0);
        while cur != first.tail {
            if vpath.contains(&cur) {
                return Err(Error::InvalidCircle("revisits a vertex".into()));
            }
            let next: Vec<usize> = graph.incidence[cur]
                .iter()
                .map(|&(e, _)| e)
                .filter(|&e| edges.contains(e) && !used.contains(e))
                .collect();
            let [e] = next[..] else {
                return Err(Error::InvalidCircle(format!("vertex {cur} does not have degree 2")));
            };
            if graph.edges[e].is_loop() {
                return Err(Error::InvalidCircle("contains a loop".into()));
            }
            vpath.push(cur);
            epath.push(e);
            used.insert(e);
            cur = graph.edges[e].other(cur);
        }
        if used != edges {
            return Err(Error::InvalidCircle("edge set is not connected".into()));
        }
        vpath.push(first.tail);
        Ok(Self::canonical(graph, &vpath, &epath))
    }

    /// Vertices in traversal order (the closing vertex is not repeated).
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Edges in traversal order.
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edge_set
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Three internally disjoint paths joining the branch vertices `ends`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Theta {
    pub ends: (usize, usize),
    /// Edge sets of the three paths, ascending.
    pub paths: [EdgeSet; 3],
}

impl Theta {
    pub fn edge_set(&self) -> EdgeSet {
        self.paths[0] | self.paths[1] | self.paths[2]
    }

    /// The three circles of the theta, as edge sets.
    pub fn circles(&self) -> [EdgeSet; 3] {
        let [a, b, c] = self.paths;
        [a | b, a | c, b | c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> Bits {
        xs.iter().copied().collect()
    }

    /// Independent validator: consecutive edges share the listed vertices,
    /// vertices are distinct, and the path closes.
    fn is_simple_closed_path(g: &Multigraph, c: &Circle) -> bool {
        let k = c.edges().len();
        let vs = c.vertices();
        if vs.len() != k || k == 0 {
            return false;
        }
        let distinct = vs.iter().collect::<alloc::collections::BTreeSet<_>>().len() == k;
        let incident = (0..k).all(|i| {
            let e = g.edge(c.edges()[i]);
            let (a, b) = (vs[i], vs[(i + 1) % k]);
            (e.tail == a && e.head == b) || (e.tail == b && e.head == a)
        });
        distinct && incident && c.edge_set().len() == k
    }

    #[test]
    fn induced_subgraphs() {
        let k4 = Multigraph::complete(4).unwrap();
        let s = k4.induced_subgraph(set(&[0, 1])).unwrap();
        assert_eq!(s.edges(), set(&[0]));
        assert_eq!(s.vertices(), set(&[0, 1]));
        assert_eq!(k4.induced_subgraph(Bits::EMPTY).unwrap(), Subgraph::EMPTY);
        assert_eq!(k4.induced_subgraph(set(&[7])), Err(Error::ForeignVertex(7)));
    }

    #[test]
    fn components_examples() {
        let g = Multigraph::path(2).unwrap();
        let none = Subgraph::edgeless(g.all_vertices());
        let blocks = |s: &Subgraph| g.components(s).blocks().to_vec();
        assert_eq!(blocks(&none), [set(&[0]), set(&[1]), set(&[2])]);
        assert_eq!(blocks(&g.whole()), [set(&[0, 1, 2])]);
        let one = g.subgraph(g.all_vertices(), set(&[0])).unwrap();
        assert_eq!(blocks(&one), [set(&[0, 1]), set(&[2])]);
    }

    #[test]
    fn circle_counts() {
        let limits = Limits::default();
        assert_eq!(Multigraph::complete(3).unwrap().circles(&limits).unwrap().len(), 1);
        let k4 = Multigraph::complete(4).unwrap().circles(&limits).unwrap();
        assert_eq!(k4.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(k4.iter().filter(|c| c.len() == 4).count(), 3);
        let digon = Multigraph::from_indices(2, &[(0, 1), (1, 0)]).unwrap().circles(&limits).unwrap();
        assert_eq!(digon.len(), 1);
        assert_eq!(digon[0].len(), 2);
        let looped = Multigraph::from_indices(1, &[(0, 0)]).unwrap().circles(&limits).unwrap();
        assert_eq!(looped.len(), 1);
        assert_eq!(looped[0].vertices(), &[0]);
    }

    #[test]
    fn circles_are_canonical_and_valid() {
        let g = Multigraph::from_indices(4, &[(0, 1), (1, 2), (2, 0), (0, 1), (2, 3), (3, 0), (1, 1), (2, 1)]).unwrap();
        for c in g.circles(&Limits::default()).unwrap() {
            assert!(is_simple_closed_path(&g, &c), "{c:?}");
            let k = c.len();
            assert_eq!(c.edges()[0], c.edge_set().first().unwrap());
            if k >= 3 {
                assert!(c.edges()[1] < c.edges()[k - 1]);
            }
            assert_eq!(Circle::from_edge_set(&g, c.edge_set()).unwrap(), c);
            let mut rev: Vec<usize> = c.edges().to_vec();
            rev.reverse();
            rev.rotate_left(k / 2);
            assert_eq!(Circle::from_edge_sequence(&g, &rev).unwrap(), c);
        }
    }

    #[test]
    fn edge_sets_that_are_not_circles() {
        let k4 = Multigraph::complete(4).unwrap();
        // path 01, 12
        assert!(Circle::from_edge_set(&k4, set(&[0, 3])).is_err());
        // two disjoint... K4 edge 01 and 23
        assert!(Circle::from_edge_set(&k4, set(&[0, 5])).is_err());
        // triangle 01,02,12 listed out of order is fine as a set
        assert!(Circle::from_edge_set(&k4, set(&[0, 1, 3])).is_ok());
        // quadrilateral 01,13,32,20 but given in non-traversal order
        assert!(Circle::from_edge_sequence(&k4, &[0, 4, 5, 1]).is_ok());
        assert!(Circle::from_edge_sequence(&k4, &[0, 5, 4, 1]).is_err());
    }

    #[test]
    fn guards_fire() {
        let k4 = Multigraph::complete(4).unwrap();
        let tight = Limits { max_circles: 3, ..Limits::default() };
        assert!(matches!(k4.circles(&tight), Err(Error::ScaleGuard { .. })));
        let few_edges = Limits { max_edges: 5, ..Limits::default() };
        assert!(matches!(k4.theta_subgraphs(&few_edges), Err(Error::ScaleGuard { .. })));
    }

    #[test]
    fn theta_examples() {
        let limits = Limits::default();
        assert!(Multigraph::complete(3).unwrap().theta_subgraphs(&limits).unwrap().is_empty());
        let three = Multigraph::from_indices(2, &[(0, 1), (0, 1), (1, 0)]).unwrap();
        let t = three.theta_subgraphs(&limits).unwrap();
        assert_eq!(t.len(), 1);
        let circles = t[0].circles();
        assert!(circles.iter().all(|c| c.len() == 2));
    }
}
