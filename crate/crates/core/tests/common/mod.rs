//! Brute-force oracles shared by the integration tests. They work from the
//! definitions directly and avoid the library's own algorithms.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rhodes_core::algebra::{GroupElement, GroupTable};
use rhodes_core::bits::Bits;
use rhodes_core::gain::GainGraph;
use rhodes_core::multigraph::{Multigraph, Subgraph};

pub fn expansion(base: &Multigraph, n: usize) -> GainGraph {
    GainGraph::group_expansion(base, &GroupTable::cyclic(n).unwrap()).unwrap()
}

pub fn z_k(n: usize, k: usize) -> GainGraph {
    expansion(&Multigraph::complete(k).unwrap(), n)
}

pub fn z_c(n: usize, k: usize) -> GainGraph {
    expansion(&Multigraph::cycle(k).unwrap(), n)
}

/// All subgraphs `(X, S)` with `S` inside the induced subgraph on `X`.
pub fn all_subgraphs(graph: &Multigraph) -> Vec<Subgraph> {
    let mut out = Vec::new();
    for x in graph.all_vertices().subsets() {
        for s in graph.edges_within(x).subsets() {
            out.push(graph.subgraph(x, s).unwrap());
        }
    }
    out
}

/// Circles as edge subsets: nonempty, connected, every vertex of degree 2
/// (a loop counts twice). Exponential in the edge count.
pub fn brute_circles(graph: &Multigraph) -> Vec<Bits> {
    assert!(graph.edge_count() <= 16, "brute-force circle oracle is exponential");
    graph
        .all_edges()
        .subsets()
        .filter(|s| !s.is_empty() && is_circle(graph, *s))
        .collect()
}

fn is_circle(graph: &Multigraph, s: Bits) -> bool {
    let mut degree = vec![0usize; graph.vertex_count()];
    for e in s.iter() {
        let edge = graph.edge(e);
        degree[edge.tail] += 1;
        degree[edge.head] += 1;
    }
    if degree.iter().any(|&d| d != 0 && d != 2) {
        return false;
    }
    let vertices: Bits = (0..graph.vertex_count()).filter(|&v| degree[v] == 2).collect();
    connected(graph, vertices, s)
}

pub fn connected(graph: &Multigraph, vertices: Bits, edges: Bits) -> bool {
    let Some(start) = vertices.first() else { return true };
    let mut seen = Bits::singleton(start);
    let mut changed = true;
    while changed {
        changed = false;
        for e in edges.iter() {
            let edge = graph.edge(e);
            if seen.contains(edge.tail) != seen.contains(edge.head) {
                seen.insert(edge.tail);
                seen.insert(edge.head);
                changed = true;
            }
        }
    }
    seen == vertices
}

/// Gain of a circle (given as an edge set) read once around from its
/// smallest vertex; balanced iff this is the identity.
pub fn circle_gain(phi: &GainGraph, circle: Bits) -> GroupElement {
    let graph = phi.graph();
    let group = phi.group();
    let start = circle.iter().map(|e| graph.edge(e).tail.min(graph.edge(e).head)).min().unwrap();
    let mut at = start;
    let mut left = circle;
    let mut gain = group.identity();
    while let Some(e) = left.iter().find(|&e| graph.edge(e).tail == at || graph.edge(e).head == at) {
        left.remove(e);
        let edge = graph.edge(e);
        let (g, next) = if edge.tail == at { (phi.gain(e), edge.head) } else { (group.inv(phi.gain(e)), edge.tail) };
        gain = group.mul(gain, g);
        at = next;
    }
    assert!(left.is_empty() && at == start);
    gain
}

pub struct Oracle {
    pub circles: Vec<Bits>,
    pub balanced: Vec<Bits>,
    /// Vertex sets of the balanced circles.
    pub balanced_vertices: Vec<Bits>,
}

impl Oracle {
    pub fn new(phi: &GainGraph) -> Oracle {
        let circles = brute_circles(phi.graph());
        let balanced: Vec<Bits> = circles
            .iter()
            .copied()
            .filter(|&c| circle_gain(phi, c) == phi.group().identity())
            .collect();
        let balanced_vertices = balanced.iter().map(|&c| phi.graph().endpoints(c)).collect();
        Oracle { circles, balanced, balanced_vertices }
    }

    pub fn is_balanced(&self, edges: Bits) -> bool {
        self.circles.iter().filter(|c| c.is_subset(edges)).all(|c| self.balanced.contains(c))
    }

    /// No balanced circle on the vertices has exactly one edge outside.
    pub fn is_semiclosed(&self, sub: &Subgraph) -> bool {
        self.balanced
            .iter()
            .zip(&self.balanced_vertices)
            .all(|(c, v)| !v.is_subset(sub.vertices()) || (*c - sub.edges()).len() != 1)
    }

    pub fn is_closed_balanced(&self, sub: &Subgraph) -> bool {
        self.is_balanced(sub.edges()) && self.is_semiclosed(sub)
    }
}

/// Partial partitions of `0..n` as block lists, via labels in
/// `{unassigned, 0, 1, ...}` in restricted-growth form.
pub fn partial_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(v: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if v == n {
            out.push(blocks.clone());
            return;
        }
        go(v + 1, n, blocks, out);
        for b in 0..blocks.len() {
            blocks[b].push(v);
            go(v + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![v]);
        go(v + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// `sum over partial partitions pi of |G|^(|supp pi| - |pi|)`.
pub fn pair_count_formula(order: usize, n: usize) -> usize {
    partial_partitions(n)
        .iter()
        .map(|p| {
            let support: usize = p.iter().map(Vec::len).sum();
            order.pow((support - p.len()) as u32)
        })
        .sum()
}

/// A random gain graph on `2..=max_vertices` vertices with at most
/// `max_edges` edges (links, parallel edges, and loops when `loops`), over
/// `Z_k` with `k` in `2..=6`.
pub fn random_gain_graph(rng: &mut ChaCha8Rng, max_vertices: usize, max_edges: usize, loops: bool) -> GainGraph {
    let n = rng.gen_range(2..=max_vertices);
    let m = rng.gen_range(1..=max_edges);
    let mut ends = Vec::with_capacity(m);
    while ends.len() < m {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b || loops {
            ends.push((a, b));
        }
    }
    let graph = Multigraph::from_indices(n, &ends).unwrap();
    let group = GroupTable::cyclic(rng.gen_range(2..=6)).unwrap();
    let gains = (0..m).map(|_| group.element(rng.gen_range(0..group.order())).unwrap()).collect();
    GainGraph::new(graph, group, gains).unwrap()
}

/// Simple paths from `a` to `b` inside `edges`, as edge sequences.
pub fn simple_paths(graph: &Multigraph, edges: Bits, a: usize, b: usize) -> Vec<Vec<usize>> {
    fn go(graph: &Multigraph, edges: Bits, at: usize, b: usize, seen: Bits, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if at == b {
            out.push(path.clone());
            return;
        }
        for e in edges.iter() {
            let edge = graph.edge(e);
            if edge.is_loop() || (edge.tail != at && edge.head != at) {
                continue;
            }
            let next = edge.other(at);
            if seen.contains(next) {
                continue;
            }
            path.push(e);
            go(graph, edges, next, b, seen.with(next), path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(graph, edges, a, b, Bits::singleton(a), &mut Vec::new(), &mut out);
    out
}

/// Proptest strategy: gain graphs on 2 to 4 vertices with up to `max_edges`
/// edges (loops included) over `Z_1` to `Z_4`.
pub fn gain_graphs(max_edges: usize) -> impl proptest::strategy::Strategy<Value = GainGraph> {
    use proptest::prelude::*;
    (2usize..=4, 1usize..=4).prop_flat_map(move |(n, k)| {
        proptest::collection::vec((0..n, 0..n, 0..k), 0..=max_edges).prop_map(move |edges| {
            let ends: Vec<(usize, usize)> = edges.iter().map(|&(a, b, _)| (a, b)).collect();
            let graph = Multigraph::from_indices(n, &ends).unwrap();
            let group = GroupTable::cyclic(k).unwrap();
            let gains = edges.iter().map(|&(_, _, g)| group.element(g).unwrap()).collect();
            GainGraph::new(graph, group, gains).unwrap()
        })
    })
}
