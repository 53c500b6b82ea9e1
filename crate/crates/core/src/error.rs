use thiserror::Error;

/// Errors raised by the library. Every message starts with the variant name so
/// callers (and the CLI) can report which check rejected the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("VertexOutOfRange: vertex {vertex} is not in [1, {m}]")]
    VertexOutOfRange { vertex: usize, m: usize },

    #[error("IsolatedVertexMissing: vertex {vertex} lies in no facet")]
    IsolatedVertexMissing { vertex: usize },

    #[error("EmptyFacetList: a complex needs at least one nonempty facet")]
    EmptyFacetList,

    #[error("InvalidDimension: {0}")]
    InvalidDimension(String),

    #[error("VertexBudgetExceeded: {requested} vertices requested, cap is {cap}")]
    VertexBudgetExceeded { requested: usize, cap: usize },

    #[error("NotAComplex: d∘d ≠ 0 at degree {degree}")]
    NotAComplex { degree: i32 },

    #[error("PartitionMismatch: {0}")]
    PartitionMismatch(String),

    #[error("ColorOutOfRange: color {color} is not in [1, {r}]")]
    ColorOutOfRange { color: usize, r: usize },

    #[error("NotAMember: color {color} is not in the given color set")]
    NotAMember { color: usize },

    #[error("DegeneratePartition: block {block} contains both endpoints of edge {{{u}, {v}}}")]
    DegeneratePartition { block: usize, u: usize, v: usize },

    #[error("MismatchFound: {what} disagrees at q = {q}, L = {colors:?}")]
    MismatchFound {
        what: String,
        q: usize,
        colors: Vec<usize>,
    },

    #[error("InvalidField: {0}")]
    InvalidField(String),

    #[error("ParseError: line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
