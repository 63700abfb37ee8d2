use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A group table failed validation.
    InvalidGroup(String),
    /// A group element index outside `0..order`.
    ForeignElement { index: usize, order: usize },
    /// A graph description failed validation.
    InvalidGraph(String),
    /// A vertex index or id that is not part of the graph.
    ForeignVertex(usize),
    /// An edge index or id that is not part of the graph (or of a ground set).
    ForeignEdge(usize),
    /// A walk whose consecutive incidences do not match the graph.
    BrokenWalk(String),
    /// An edge sequence that is not a simple closed path.
    InvalidCircle(String),
    /// A subgraph that was required to be balanced is not.
    Unbalanced { edge: usize },
    /// A subgraph that was required to be closed and balanced is not.
    NotClosedBalanced,
    /// A balanced-circle class that violates the theta condition.
    ThetaViolation(String),
    /// Partition data is malformed or two partitions do not share a ground set.
    InvalidPartition(String),
    /// A potential function that is not defined where it must be.
    PotentialDomain(String),
    /// The requested refinement does not hold.
    NotRefinement,
    /// Group expansion of a graph with loops.
    LoopsInExpansion,
    /// An enumeration guard was exceeded.
    ScaleGuard { guard: &'static str, limit: usize, actual: usize },
    /// A poset element index out of range.
    NotAnElement(usize),
    /// A poset relation that is not a partial order.
    NotPartialOrder(String),
    /// The host is not one of the supported worked-example fixtures.
    WrongFixture(String),
    /// The operation is not available for this input.
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGroup(m) => write!(f, "invalid group table: {m}"),
            Error::ForeignElement { index, order } => {
                write!(f, "group element {index} does not belong to a group of order {order}")
            }
            Error::InvalidGraph(m) => write!(f, "invalid graph: {m}"),
            Error::ForeignVertex(v) => write!(f, "vertex {v} is not in the graph"),
            Error::ForeignEdge(e) => write!(f, "edge {e} is not in the graph"),
            Error::BrokenWalk(m) => write!(f, "broken walk: {m}"),
            Error::InvalidCircle(m) => write!(f, "not a circle: {m}"),
            Error::Unbalanced { edge } => write!(f, "subgraph is unbalanced (witness edge index {edge})"),
            Error::NotClosedBalanced => write!(f, "subgraph is not closed and balanced"),
            Error::ThetaViolation(m) => write!(f, "theta condition violated: {m}"),
            Error::InvalidPartition(m) => write!(f, "invalid partial partition: {m}"),
            Error::PotentialDomain(m) => write!(f, "potential undefined: {m}"),
            Error::NotRefinement => write!(f, "partition does not refine the system's partition"),
            Error::LoopsInExpansion => write!(f, "group expansion requires a loop-free base graph"),
            Error::ScaleGuard { guard, limit, actual } => {
                write!(f, "scale guard `{guard}` exceeded: {actual} > {limit}")
            }
            Error::NotAnElement(i) => write!(f, "index {i} is not a poset element"),
            Error::NotPartialOrder(m) => write!(f, "relation is not a partial order: {m}"),
            Error::WrongFixture(m) => write!(f, "wrong fixture: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn guard(name: &'static str, limit: usize, actual: usize) -> Result<()> {
    if actual > limit {
        Err(Error::ScaleGuard { guard: name, limit, actual })
    } else {
        Ok(())
    }
}
