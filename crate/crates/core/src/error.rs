use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraftError {
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("vertex id {0} out of range")]
    InvalidVertex(usize),
    #[error("edge id {0} out of range")]
    InvalidEdge(usize),
    #[error("connected component {0:?} holds an odd number of terminals")]
    OddComponent(Vec<VertexId>),
    #[error("{what} = {actual} exceeds the configured cap of {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("vertices {0} and {1} lie in different connected components")]
    Disconnected(VertexId, VertexId),
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph has no perfect matching")]
    NotFactorizable,
    #[error("invalid designation: {0}")]
    InvalidDesignation(String),
    #[error("graft is not comb-bipartite for the given designation (nu = {nu}, |B| = {teeth})")]
    NotComb { nu: usize, teeth: usize },
    #[error("tooth {0} is not a terminal, so no minimum join can meet it")]
    ToothNotTerminal(String),
    #[error("components {0} and {1} precede each other")]
    AntisymmetryViolation(usize, usize),
    #[error("components {0} and {1} are not related by a strict order step")]
    NotRelated(usize, usize),
    #[error("unknown factor-component id {0}")]
    UnknownComponent(usize),
    #[error("conflicting attribute labels inside upper bound block of component {component}: classes {classes:?}")]
    InconsistentLabeling { component: usize, classes: Vec<usize> },
    #[error("upper bound {0} received no attribute label")]
    UnlabeledUpperBound(usize),
    #[error("no comb instance found after {0} tries")]
    Exhausted(usize),
}

pub type Result<T> = std::result::Result<T, GraftError>;
