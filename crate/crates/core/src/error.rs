use alloc::string::String;

use thiserror::Error;

/// Everything that can go wrong in the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime accepted as a field characteristic")]
    NotPrime(u64),
    #[error("cannot parse scalar literal {0:?}")]
    ScalarParse(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("subspace inclusion violated")]
    InclusionViolation,

    #[error("duplicate vertex name {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate arrow name {0:?}")]
    DuplicateArrow(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("relation is not admissible: {0}")]
    NotAdmissible(String),
    #[error("relation paths do not compose: {0}")]
    NotComposable(String),
    #[error("ideal not admissible within bound {bound}: path {path} survives")]
    NotAdmissibleWithinBound { bound: usize, path: String },

    #[error("modules live over different quivers")]
    AlgebraMismatch,
    #[error("module shape is inconsistent: {0}")]
    BadModuleShape(String),
    #[error("relation {0} does not act as zero on the module")]
    RelationNotSatisfied(usize),
    #[error("submodule is not closed under the arrow actions")]
    NotActionClosed,
    #[error("submodule chain is not increasing at position {0}")]
    NonIncreasingChain(usize),
    #[error("chain must start at 0 and end at the whole module")]
    ChainEndpoints,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("vertex {vertex} is not in stratum {stratum}")]
    NotInStratum { vertex: usize, stratum: usize },
    #[error("module is not in F_f(Delta): {0}")]
    NotDeltaFiltered(String),
}
