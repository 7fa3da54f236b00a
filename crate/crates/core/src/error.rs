use thiserror::Error;

/// Errors surfaced by the library. Verdict-style checks (duality,
/// Dehn–Sommerville, χ-identity, ...) never error on a failed identity;
/// they return a structured report instead. Errors here mean the input
/// was unusable or an internal contract was violated.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("empty input: at least one facet is required")]
    EmptyInput,

    #[error("vertex {vertex} out of range 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },

    #[error("vertex {vertex} appears in no facet (ghost vertices are rejected)")]
    GhostVertex { vertex: usize },

    #[error("size cap exceeded: {what} = {got} > {cap}")]
    CapExceeded {
        what: &'static str,
        got: usize,
        cap: usize,
    },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("complex is not flagged polytopal; {0} requires a polytopal input")]
    NotPolytopal(&'static str),

    #[error("polytopal check failed: facets do not all have the same size")]
    NotPure,

    #[error("polytopal check failed: a ridge lies in {count} facets instead of 2")]
    NotPseudomanifold { count: usize },

    #[error("matrix shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("composition of differentials is nonzero (differential bug upstream)")]
    ComposeNotZero,

    #[error("input cochain is not a cocycle")]
    NotACocycle,

    #[error("top stratum has dimension {dim} != 1; input likely not polytopal")]
    TopStratumNotOneDimensional { dim: usize },

    #[error("Poincaré pairing is singular; input likely not polytopal")]
    SingularPairing,

    #[error("characteristic matrix rejected at facets {0:?}")]
    InvalidCharacteristic(Vec<Vec<usize>>),

    #[error("subgroup matrix is not of full rank over the rationals")]
    DegenerateT,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
