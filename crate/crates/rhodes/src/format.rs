//! JSON file formats for groups, hosts, subgraphs, partition-potential pairs
//! and enumerated lattices. Vertices and edges are referred to by id.

use std::collections::BTreeMap;

use rhodes_core::algebra::GroupTable;
use rhodes_core::bias::BiasedGraph;
use rhodes_core::bits::Bits;
use rhodes_core::gain::GainGraph;
use rhodes_core::latticekit::{FinitePoset, LatticeElement};
use rhodes_core::multigraph::{Circle, Multigraph, Subgraph};
use rhodes_core::partition::{PartialPartition, PotentialFunction};
use rhodes_core::rhodes::PartitionPotentialPair;
use rhodes_core::Limits;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("unknown vertex id {0}")]
    UnknownVertex(u32),
    #[error("unknown edge id {0}")]
    UnknownEdge(u32),
    #[error("edge {0} has no gain")]
    MissingGain(u32),
    #[error("a gain graph needs a \"group\"")]
    MissingGroup,
    #[error("bad group spec `{0}`: expected cyclic:N or product:N,M,...")]
    BadGroupSpec(String),
    #[error("this command needs a gain graph, not a biased graph")]
    NeedsGains,
    #[error("malformed lattice file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Core(#[from] rhodes_core::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = FormatError> = std::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic {
        n: usize,
    },
    Table {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
}

impl GroupSpec {
    /// `cyclic:N` or `product:N,M,...` (a product of cyclic groups).
    pub fn parse(s: &str) -> Result<GroupSpec> {
        let bad = || FormatError::BadGroupSpec(s.to_string());
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let orders: Vec<usize> = rest
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (kind, orders.as_slice()) {
            ("cyclic", [n]) => Ok(GroupSpec::Cyclic { n: *n }),
            ("product", [_, _, ..]) => {
                Ok(GroupSpec::Product { factors: orders.iter().map(|&n| GroupSpec::Cyclic { n }).collect() })
            }
            _ => Err(bad()),
        }
    }

    pub fn build(&self) -> Result<GroupTable> {
        Ok(match self {
            GroupSpec::Cyclic { n } => GroupTable::cyclic(*n)?,
            GroupSpec::Table { table, label } => GroupTable::from_table(table, label.clone().unwrap_or_else(|| "G".into()))?,
            GroupSpec::Product { factors } => {
                let mut it = factors.iter();
                let first = it.next().ok_or_else(|| FormatError::BadGroupSpec("empty product".into()))?;
                it.try_fold(first.build()?, |acc, f| f.build().map(|g| GroupTable::direct_product(&acc, &g)))?
            }
        })
    }

    /// Cyclic groups stay symbolic; anything else is written as its table.
    pub fn of(group: &GroupTable) -> GroupSpec {
        match group.cyclic_order() {
            Some(n) => GroupSpec::Cyclic { n },
            None => GroupSpec::Table { table: group.rows(), label: Some(group.label().to_string()) },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: u32,
    pub tail: u32,
    pub head: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gain: Option<usize>,
}

/// A gain graph (with `group` and gains) or a biased graph (with
/// `balanced`, a list of circles given by edge ids).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HostFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    pub vertices: Vec<u32>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub balanced: Option<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug)]
pub enum Host {
    Gain(GainGraph),
    Biased(BiasedGraph),
}

impl Host {
    pub fn graph(&self) -> &Multigraph {
        match self {
            Host::Gain(phi) => phi.graph(),
            Host::Biased(b) => b.graph(),
        }
    }

    pub fn gains(&self) -> Result<&GainGraph> {
        match self {
            Host::Gain(phi) => Ok(phi),
            Host::Biased(_) => Err(FormatError::NeedsGains),
        }
    }

    /// The biased graph itself, or the one induced by the gains.
    pub fn bias(&self, limits: &Limits) -> Result<BiasedGraph> {
        match self {
            Host::Gain(phi) => Ok(BiasedGraph::from_gains_unvalidated(phi, limits)?),
            Host::Biased(b) => Ok(b.clone()),
        }
    }
}

impl HostFile {
    pub fn from_gain_graph(phi: &GainGraph) -> HostFile {
        let g = phi.graph();
        let ids = g.vertex_ids();
        HostFile {
            group: Some(GroupSpec::of(phi.group())),
            vertices: ids.to_vec(),
            edges: g
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| EdgeRecord {
                    id: e.id,
                    tail: ids[e.tail],
                    head: ids[e.head],
                    gain: Some(phi.gain(i).index()),
                })
                .collect(),
            balanced: None,
        }
    }

    pub fn from_biased_graph(bias: &BiasedGraph) -> HostFile {
        let g = bias.graph();
        let ids = g.vertex_ids();
        HostFile {
            group: None,
            vertices: ids.to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeRecord { id: e.id, tail: ids[e.tail], head: ids[e.head], gain: None })
                .collect(),
            balanced: Some(
                bias.balanced_circles().map(|c| c.edges().iter().map(|&e| g.edge(e).id).collect()).collect(),
            ),
        }
    }

    pub fn graph(&self) -> Result<Multigraph> {
        Ok(Multigraph::new(self.vertices.iter().copied(), self.edges.iter().map(|e| (e.id, e.tail, e.head)))?)
    }

    /// Builds the host; biased graphs are checked against the theta condition.
    pub fn load(&self, limits: &Limits) -> Result<Host> {
        let graph = self.graph()?;
        if let Some(balanced) = &self.balanced {
            let mut circles = Vec::with_capacity(balanced.len());
            for ids in balanced {
                let edges = edge_set(&graph, ids)?;
                circles.push(Circle::from_edge_set(&graph, edges)?);
            }
            return Ok(Host::Biased(BiasedGraph::new(graph, circles, limits)?));
        }
        let group = self.group.as_ref().ok_or(FormatError::MissingGroup)?.build()?;
        let mut gains = vec![group.identity(); graph.edge_count()];
        for rec in &self.edges {
            let gain = rec.gain.ok_or(FormatError::MissingGain(rec.id))?;
            let e = graph.edge_index(rec.id).ok_or(FormatError::UnknownEdge(rec.id))?;
            gains[e] = group.element(gain)?;
        }
        Ok(Host::Gain(GainGraph::new(graph, group, gains)?))
    }
}

pub fn vertex_set(graph: &Multigraph, ids: &[u32]) -> Result<Bits> {
    ids.iter().map(|&v| graph.vertex_index(v).ok_or(FormatError::UnknownVertex(v))).collect()
}

pub fn edge_set(graph: &Multigraph, ids: &[u32]) -> Result<Bits> {
    ids.iter().map(|&e| graph.edge_index(e).ok_or(FormatError::UnknownEdge(e))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubgraphRecord {
    pub vertices: Vec<u32>,
    pub edges: Vec<u32>,
}

impl SubgraphRecord {
    pub fn of(graph: &Multigraph, sub: &Subgraph) -> SubgraphRecord {
        SubgraphRecord {
            vertices: sub.vertices().iter().map(|v| graph.vertex_ids()[v]).collect(),
            edges: sub.edges().iter().map(|e| graph.edge(e).id).collect(),
        }
    }

    pub fn resolve(&self, graph: &Multigraph) -> Result<Subgraph> {
        Ok(graph.subgraph(vertex_set(graph, &self.vertices)?, edge_set(graph, &self.edges)?)?)
    }
}

/// `{"blocks":[[0,1],[2]],"rep":{"0":0,"1":3,"2":0}}`, in vertex ids and
/// group element indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairRecord {
    pub blocks: Vec<Vec<u32>>,
    pub rep: BTreeMap<String, usize>,
}

impl PairRecord {
    pub fn of(graph: &Multigraph, pair: &PartitionPotentialPair) -> PairRecord {
        let ids = graph.vertex_ids();
        let blocks = pair.partition().blocks().iter().map(|b| b.iter().map(|v| ids[v]).collect()).collect();
        let rep = pair
            .partition()
            .support()
            .iter()
            .map(|v| (ids[v].to_string(), pair.system().rep(v).index()))
            .collect();
        PairRecord { blocks, rep }
    }

    /// Any representative is accepted; the result is canonical.
    pub fn resolve(&self, phi: &GainGraph) -> Result<PartitionPotentialPair> {
        let graph = phi.graph();
        let n = graph.vertex_count();
        let blocks = self.blocks.iter().map(|b| vertex_set(graph, b)).collect::<Result<Vec<_>>>()?;
        let partition = PartialPartition::new(n, blocks)?;
        let mut values = Vec::with_capacity(self.rep.len());
        for (id, &g) in &self.rep {
            let id: u32 = id.parse().map_err(|_| FormatError::Malformed(format!("rep key `{id}` is not a vertex id")))?;
            let v = graph.vertex_index(id).ok_or(FormatError::UnknownVertex(id))?;
            values.push((v, phi.group().element(g)?));
        }
        let theta = PotentialFunction::from_pairs(n, values)?;
        Ok(PartitionPotentialPair::from_function(phi.group(), &partition, &theta)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementRecord {
    Subgraph(SubgraphRecord),
    Pair(PairRecord),
    Top,
}

impl ElementRecord {
    pub fn of(graph: &Multigraph, element: &LatticeElement) -> ElementRecord {
        match element {
            LatticeElement::Subgraph(s) => ElementRecord::Subgraph(SubgraphRecord::of(graph, s)),
            LatticeElement::Top => ElementRecord::Top,
        }
    }

    /// Canonical one-line serialization, used as a label.
    pub fn label(&self) -> String {
        match self {
            ElementRecord::Top => "1̂".to_string(),
            ElementRecord::Subgraph(s) => format!("V{:?} E{:?}", s.vertices, s.edges),
            ElementRecord::Pair(p) => serde_json::to_string(p).expect("plain data"),
        }
    }
}

/// An enumerated poset: elements plus its covering relation
/// (`[lower, upper]` index pairs), which determines the order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub kind: String,
    pub elements: Vec<ElementRecord>,
    pub covers: Vec<[usize; 2]>,
}

impl LatticeFile {
    pub fn of<T>(kind: &str, poset: &FinitePoset<T>, record: impl Fn(&T) -> ElementRecord) -> LatticeFile {
        LatticeFile {
            kind: kind.to_string(),
            elements: poset.elements().iter().map(record).collect(),
            covers: poset.cover_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    /// Rebuilds the order as the reflexive-transitive closure of the covers
    /// and checks that the covers are exactly its covering relation.
    pub fn to_poset(&self) -> Result<FinitePoset<ElementRecord>> {
        let n = self.elements.len();
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for &[a, b] in &self.covers {
            if a >= n || b >= n {
                return Err(FormatError::Malformed(format!("cover [{a}, {b}] names a missing element")));
            }
            reach[a][b] = true;
        }
        for k in 0..n {
            let through = reach[k].clone();
            for row in reach.iter_mut().filter(|row| row[k]) {
                for (cell, &via) in row.iter_mut().zip(&through) {
                    *cell |= via;
                }
            }
        }
        let poset = FinitePoset::from_matrix(self.elements.clone(), &reach)?;
        let mut covers: Vec<(usize, usize)> = self.covers.iter().map(|&[a, b]| (a, b)).collect();
        covers.sort_unstable();
        if covers != poset.cover_pairs() {
            return Err(FormatError::Malformed("cover list is not the covering relation of its order".into()));
        }
        Ok(poset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rhodes_core::multigraph::Multigraph;

    #[test]
    fn group_specs() {
        assert_eq!(GroupSpec::parse("cyclic:6").unwrap(), GroupSpec::Cyclic { n: 6 });
        assert_eq!(GroupSpec::parse("product:2,3").unwrap().build().unwrap().order(), 6);
        assert!(GroupSpec::parse("cyclic").is_err());
        assert!(GroupSpec::parse("dihedral:3").is_err());
        assert!(GroupSpec::parse("cyclic:0").unwrap().build().is_err());
        let json = serde_json::to_string(&GroupSpec::Cyclic { n: 6 }).unwrap();
        assert_eq!(json, r#"{"kind":"cyclic","n":6}"#);
        let v4 = GroupSpec::parse("product:2,2").unwrap().build().unwrap();
        assert_eq!(GroupSpec::of(&v4).build().unwrap(), v4);
    }

    #[test]
    fn gain_graph_round_trip() {
        let phi = GainGraph::group_expansion(&Multigraph::cycle(3).unwrap(), &GroupTable::cyclic(2).unwrap()).unwrap();
        let file = HostFile::from_gain_graph(&phi);
        let text = serde_json::to_string(&file).unwrap();
        let back: HostFile = serde_json::from_str(&text).unwrap();
        match back.load(&Limits::default()).unwrap() {
            Host::Gain(psi) => assert_eq!(psi, phi),
            Host::Biased(_) => panic!("expected gains"),
        }
    }

    #[test]
    fn pair_format() {
        let phi = GainGraph::group_expansion(&Multigraph::complete(3).unwrap(), &GroupTable::cyclic(6).unwrap()).unwrap();
        let rec: PairRecord = serde_json::from_str(r#"{"blocks":[[0,1],[2]],"rep":{"0":0,"1":3,"2":0}}"#).unwrap();
        let pair = rec.resolve(&phi).unwrap();
        assert_eq!(PairRecord::of(phi.graph(), &pair), rec);
        // non-canonical representatives are normalized
        let shifted: PairRecord = serde_json::from_str(r#"{"blocks":[[0,1],[2]],"rep":{"0":1,"1":4,"2":5}}"#).unwrap();
        assert_eq!(shifted.resolve(&phi).unwrap(), pair);
        let missing: PairRecord = serde_json::from_str(r#"{"blocks":[[0,1]],"rep":{"0":0}}"#).unwrap();
        assert!(missing.resolve(&phi).is_err());
    }

    #[test]
    fn malformed_lattice_files() {
        let chain = LatticeFile {
            kind: "test".into(),
            elements: vec![ElementRecord::Top, ElementRecord::Top, ElementRecord::Top],
            covers: vec![[0, 1], [1, 2]],
        };
        assert_eq!(chain.to_poset().unwrap().len(), 3);
        let redundant = LatticeFile { covers: vec![[0, 1], [1, 2], [0, 2]], ..chain.clone() };
        assert!(redundant.to_poset().is_err());
        let cyclic = LatticeFile { covers: vec![[0, 1], [1, 0]], ..chain.clone() };
        assert!(cyclic.to_poset().is_err());
        let dangling = LatticeFile { covers: vec![[0, 7]], ..chain };
        assert!(dangling.to_poset().is_err());
    }
}
