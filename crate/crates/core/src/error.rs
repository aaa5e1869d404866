use thiserror::Error;

/// Errors raised by graph construction, factorization and the recognition pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    InvalidVertex { vertex: usize, vertex_count: usize },

    #[error("vertex set is empty")]
    EmptyVertexSet,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not thin: vertices {0} and {1} have the same closed neighborhood")]
    NotThin(usize, usize),

    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),

    #[error("graph is not simple: {0}")]
    NotSimple(String),

    #[error("factor list is empty")]
    NoFactors,

    #[error("factor index {index} out of range for {count} factors")]
    FactorIndex { index: usize, count: usize },

    #[error("invalid coordinatization: {0}")]
    InvalidCoordinatization(String),

    #[error("graph has {size} vertices, above the size cap of {cap}")]
    SizeCap { size: usize, cap: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {0} is not in the backbone")]
    NotInBackbone(usize),

    #[error("color continuation failed: edge {parent}-{vertex} is not a lifted Cartesian edge of the neighborhood of {vertex}")]
    ContinuationFailed { parent: usize, vertex: usize },

    #[error("conflicting colors on edge {0}-{1}")]
    ColorConflict(usize, usize),

    #[error("neighborhood of {vertex} has {found} prime factors, anchor neighborhood has {expected}")]
    FactorCountMismatch {
        vertex: usize,
        found: usize,
        expected: usize,
    },

    #[error("N2 sweep infeasible at this max degree: 2-neighborhood of {vertex} has {size} vertices (cap {cap})")]
    N2Infeasible { vertex: usize, size: usize, cap: usize },

    #[error("color class {color} does not span the graph (vertex {vertex} has no edge of that color)")]
    NonSpanning { color: usize, vertex: usize },

    #[error("graph is not locally unrefined: {0}")]
    NotLocallyUnrefined(String),

    #[error("no graph found after {attempts} attempts (n = {n}, edge probability {edge_prob})")]
    GenerationBudget {
        n: usize,
        edge_prob: f64,
        attempts: usize,
    },

    #[error("fixture search failed: {0}")]
    FixtureSearch(String),

    #[error("internal factorization inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
