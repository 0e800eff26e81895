use alloc::string::String;
use alloc::vec::Vec;

use crate::complex::Vertex;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("complex does not fit the ambient context (n = {n}, r = {r}): {reason}")]
    Context { n: u32, r: usize, reason: String },

    #[error("{0}")]
    Domain(String),

    /// The sandwich formula needs the boundary of every external face of the upper complex to
    /// lie in the lower complex; `face` is an external face for which it does not.
    #[error("sandwich precondition violated: boundary of external face {face:?} is not contained in the lower complex")]
    Precondition { face: Vec<Vertex> },

    #[error("{what} = {actual} exceeds the configured cap {limit}")]
    ResourceCap { what: &'static str, limit: usize, actual: usize },

    #[error("complex of dimension {dim} exceeds the dimension cap r = {r}")]
    DimensionCap { dim: isize, r: usize },

    #[error("degenerate regime: {0}")]
    Degenerate(String),

    #[error("unknown preset `{0}` (expected erdos-renyi, linial-meshulam, meshulam-wallach or clique)")]
    UnknownPreset(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }
}
