use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {v} out of range for a structure on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("codegree requires two distinct vertices")]
    CodegreeSameVertex,
    #[error("operation requires a 3-uniform hypergraph, got r = {r}")]
    NotThreeUniform { r: usize },
    #[error("edge {edge:?} has wrong arity (expected {r})")]
    WrongArity { edge: Vec<usize>, r: usize },
    #[error("duplicate edge {edge:?}")]
    DuplicateEdge { edge: Vec<usize> },
    #[error("edge {edge:?} repeats a vertex")]
    RepeatedVertex { edge: Vec<usize> },
    #[error("{q} is not prime")]
    NotPrime { q: u64 },
    #[error("girth {girth:?} too small: need girth > {need}")]
    GirthTooSmall { girth: Option<usize>, need: usize },
    #[error("no vertices survive degree peeling")]
    EmptySurvivor,
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("edge {edge:?} not present")]
    MissingEdge { edge: Vec<usize> },
    #[error("sample size {s} exceeds vertex count {n}")]
    SampleTooLarge { s: usize, n: usize },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
