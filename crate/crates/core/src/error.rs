use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("triangle {index} is malformed: {reason}")]
    MalformedTriangle { index: usize, reason: String },
    #[error("triangle {index} duplicates triangle {first}")]
    DuplicateTriangle { index: usize, first: usize },
    #[error("triangulation has no triangles")]
    Empty,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("link of vertex `{0}` is neither a cycle nor a path")]
    LinkNotCycle(String),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("map is not a bijection: {0}")]
    NotBijection(String),
    #[error("map does not preserve the intersection matrix at ({i}, {j})")]
    NotIntersectionPreserving { i: usize, j: usize },
    #[error("invalid intersection matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid shell: {0}")]
    InvalidShell(String),
    #[error("shell matches no known realization")]
    Unclassifiable,
    #[error("not a closed connected surface: {0}")]
    NotClosedSurface(String),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("matrix is not realizable by any triangulation")]
    NotRealizable,
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("fixture error: {0}")]
    Fixture(String),
}
