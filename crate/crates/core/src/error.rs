use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A facet given to a constructor is empty or repeats a vertex.
    #[error("malformed facet: {0}")]
    MalformedFacet(String),

    /// A vertex label was used that does not belong to the complex at hand.
    #[error("unknown vertex: {0}")]
    UnknownVertex(String),

    /// A parameter is outside the supported range of an operation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A vertex map was used where a simplicial map is required.
    #[error("vertex map is not simplicial")]
    NotSimplicial,

    /// Top-dimensional reduced homology is not infinite cyclic.
    #[error("not a homology sphere: {0}")]
    NotAHomologySphere(String),

    /// A mechanically checked statement failed to verify.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    /// A facet file could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    FacetParse { line: usize, msg: String },

    /// The input is legal but beyond the sizes this implementation handles.
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// An internal consistency check failed; indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
