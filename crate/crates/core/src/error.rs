use thiserror::Error;

use crate::facet::{Facet, Ridge, Vertex};

/// Why a facet cannot be appended to a partial complex.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("facet {0:?} has the wrong size or a label outside the vertex budget")]
    InvalidFacet(Facet),
    #[error("facet {facet:?} is not lexicographically greater than {last:?}")]
    NotLexGreater { facet: Facet, last: Facet },
    #[error("facet touches closed vertices {0:?}")]
    ClosedVertex(Vec<Vertex>),
    #[error("ridge {0:?} is already used twice")]
    RidgeOveruse(Ridge),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("vertex budget {n} is out of range for dimension {dim}")]
    VertexBudget { dim: usize, n: usize },
    #[error("complex is empty")]
    Empty,
    #[error(transparent)]
    Violation(#[from] Violation),
    #[error("duplicate facet")]
    DuplicateFacet,
    #[error("facets must have {} vertices", .dim + 1)]
    WrongFacetSize { dim: usize },
    #[error("vertex labels are not exactly 1..n")]
    NonContiguousLabels,
    #[error("ridge {0:?} is not used exactly twice")]
    NotClosed(Ridge),
    #[error("link of vertex {0} is not a sphere")]
    LinkNotSphere(Vertex),
    #[error("complex is disconnected")]
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error("relabeling is not a bijection on the used vertices")]
    NotBijective,
    #[error("input is not a closed combinatorial manifold: {0}")]
    NotClosed(#[from] ComplexError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("dimension must be 2 or 3, got {0}")]
    Dimension(usize),
    #[error("dimension {dim} needs at least {min} vertices, got {n}")]
    TooFewVertices { dim: usize, min: usize, n: usize },
    #[error("vertex count {n} exceeds the supported maximum {max} for dimension {dim}")]
    TooManyVertices { dim: usize, n: usize, max: usize },
    #[error("a degree constraint is only supported for surfaces")]
    DegreeConstraintInDim3,
    #[error("degree constraint {q} is impossible on {n} vertices")]
    BadDegree { q: usize, n: usize },
    #[error("partition slice {index} is not below modulus {modulus}")]
    BadPartition { index: usize, modulus: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("internal assertion failed: {0}")]
    Assertion(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("genus is only defined for surfaces")]
    NotASurface,
    #[error("complex is disconnected")]
    Disconnected,
    #[error("classification by homology is only valid for 3-manifolds with at most 11 vertices (got dim {dim}, n {n})")]
    OutOfRange { dim: usize, n: usize },
    #[error("unexpected homology profile: orientable={orientable}, H1 rank {rank}, torsion {torsion:?}")]
    UnexpectedProfile { orientable: bool, rank: usize, torsion: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivelarError {
    #[error("Euler characteristic {0} is not that of a closed surface")]
    NotASurface(i64),
    #[error("triples are only defined for negative Euler characteristic")]
    NonNegativeChi,
    #[error("(n, q) = ({n}, {q}) is not admissible")]
    Inadmissible { n: usize, q: usize },
    #[error("dual vertex count n*q/p is not an integer for ({p},{q};{n})")]
    NonIntegralDual { p: u64, q: u64, n: u64 },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("internal assertion failed: {0}")]
    Assertion(String),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: ComplexError },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
