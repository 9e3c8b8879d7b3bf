use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("vertex `{0}` has negative weight {1}")]
    NegativeWeight(String, i64),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertexId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertexId(String),
    #[error("unknown edge {0}")]
    UnknownEdge(usize),
    #[error("edge {0} is a loop and cannot be contracted")]
    LoopInContractionSet(usize),
    #[error("divisor has {found} coefficients but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("divisors or functions live on different graphs")]
    GraphMismatch,
    #[error("operation requires a weightless loopless graph")]
    RequiresWeightlessLoopless,
    #[error("degree {degree} outside the admissible range [{min}, {max}]")]
    DegreeOutOfRange { degree: i64, min: i64, max: i64 },
    #[error("divisor has degree {0}, expected 0")]
    DegreeNotZero(i64),
    #[error("rank search refused: degree {degree} exceeds cap {cap}")]
    RankDegreeCapExceeded { degree: i64, cap: i64 },
    #[error("contraction set must contain exactly one edge (got {0})")]
    MultiEdgeContraction(usize),
    #[error("edge {0} is not a bridge")]
    NotABridge(usize),
    #[error("vertex `{0}` has weight zero and valency below 2; graph is not semistable")]
    NotSemistable(String),
    #[error("genus {0} is too small; need genus at least 2")]
    GenusTooSmall(i64),
    #[error("no semibalanced representative found with multipliers bounded by {0}")]
    SearchExhausted(i64),
    #[error("class enumeration would produce {count} classes, above the cap {cap}")]
    EnumerationCapExceeded { count: String, cap: u64 },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("corpus parameter {name} = {value} exceeds the limit {limit}")]
    CorpusCapExceeded {
        name: &'static str,
        value: u64,
        limit: u64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
