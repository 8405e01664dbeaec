use thiserror::Error;

/// Errors produced by graph construction and the algebra built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is disconnected: vertex `{0}` is unreachable from `{1}`")]
    DisconnectedGraph(String, String),
    #[error("edge `{edge}` refers to unknown vertex `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("invalid id `{0}`: ids must be non-empty")]
    InvalidId(String),
    #[error("edge `{edge}` has invalid label {label}: finite labels must be >= 1")]
    InvalidLabel { edge: String, label: i64 },
    #[error("more than {cap} circuits")]
    CircuitCapExceeded { cap: usize },
    #[error("edge `{0}` is labelled by infinity; contract infinite edges first")]
    InfiniteLabelPresent(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edge set is not a spanning tree: {0}")]
    NotASpanningTree(String),
    #[error("not a circuit: {0}")]
    InvalidCircuit(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("labelling is not Cartier across edge `{0}`")]
    NotCartier(String),
    #[error("graph is not a blow-up of the given base graph")]
    NotABlowupOf,
    #[error("multidegree plus alpha is nonzero on new vertex `{0}`")]
    SupportConditionViolated(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
