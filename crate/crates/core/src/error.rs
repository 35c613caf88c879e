use std::fmt;

use crate::bigraph::Edge;
use crate::subdivision::ValidationReport;

/// Which side of the bipartition a vertex lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => f.write_str("left"),
            Side::Right => f.write_str("right"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("graph has an empty side (m={m}, n={n})")]
    EmptySide { m: usize, n: usize },
    #[error("edge {0} is out of range for the declared vertex counts")]
    EdgeOutOfRange(Edge),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("{side} vertex {index} is isolated")]
    IsolatedVertex { side: Side, index: usize },
    #[error("graph is disconnected: {side} vertex {index} is unreachable from left vertex 1")]
    Disconnected { side: Side, index: usize },
    #[error("edge set is not a spanning tree of the graph: {0}")]
    NotATree(String),
    #[error("edge {0} belongs to the tree")]
    EdgeInTree(Edge),
    #[error("edge {0} is not an edge of the tree")]
    EdgeNotInTree(Edge),
    #[error("edge {0} touches a left leaf; it does not define a facet")]
    LeafEdge(Edge),
    #[error("facet sign rules disagree on edge {0}")]
    SignRuleMismatch(Edge),
    #[error("simplex support is empty")]
    EmptySupport,
    #[error("weight vector has length {got}, expected {expected}")]
    WeightLength { expected: usize, got: usize },
    #[error("weight y{index} = {value} is not a positive integer")]
    NonPositiveWeight { index: usize, value: i64 },
    #[error("point has dimension {got}, expected {expected}")]
    PointDimension { expected: usize, got: usize },
    #[error("point {0:?} is not a lattice point of the polytope")]
    NotInPolytope(Vec<i64>),
    #[error("point {0:?} lies on a positive facet")]
    NotGood(Vec<i64>),
    #[error("point {point:?} is claimed by {hits} semi-polytopes")]
    BrokenPartition { point: Vec<i64>, hits: usize },
    #[error("height function is missing edge {0}")]
    MissingHeight(Edge),
    #[error("height function assigns a height to non-edge {0}")]
    UnknownHeightEdge(Edge),
    #[error("height function is not generic")]
    NonGenericHeights,
    #[error("no generic height function found after {attempts} attempts starting at seed {seed}")]
    GenericityExhausted { seed: u64, attempts: u32 },
    #[error("candidate subdivision failed validation")]
    ValidationFailed(Box<ValidationReport>),
    #[error("graph size {m}x{n} exceeds the enumeration limit ({limit})")]
    SizeLimit { m: usize, n: usize, limit: String },
    #[error("rendering supports n in {{2, 3}}, got n={0}")]
    UnsupportedDimension(usize),
    #[error("{0}")]
    Usage(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
