use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("direction {dir} out of range for Q_{n}")]
    DirectionOutOfRange { dir: usize, n: usize },

    #[error("vertex {vertex:#b} is not a vertex of Q_{n}")]
    VertexOutOfRange { vertex: u32, n: usize },

    #[error("dimension {n} unsupported here (maximum {max}{})", if *.overridable { "; pass the override flag to allow it" } else { "" })]
    DimensionUnsupported { n: usize, max: usize, overridable: bool },

    #[error("invalid signature {entries:?}: {reason}")]
    InvalidSignature { entries: Vec<u64>, reason: String },

    #[error("cannot parse signature {0:?}")]
    SignatureParse(String),

    #[error("index {k} out of range 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },

    #[error("direction set {mask:#b} must be a proper nonempty subset of [{n}]")]
    NotProperSubset { mask: u32, n: usize },

    #[error("invalid section: {0}")]
    InvalidSection(String),

    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),

    #[error("tree is not upright: vertex {witness:#b} has depth {depth}")]
    NonUpright { witness: u32, depth: usize },

    #[error("edge set is not a spanning tree: {0}")]
    NotSpanningTree(String),

    #[error("tree does not reduce over {mask:#b}")]
    ReductionRequired { mask: u32 },

    #[error("edge {edge} is not an edge of the tree")]
    EdgeNotInTree { edge: usize },

    #[error("cannot slide an edge of direction {dir} in its own direction")]
    SameDirection { dir: usize },

    #[error("signature {0:?} is not strictly reducible")]
    NotStrictlyReducible(Vec<u32>),

    #[error("malformed decomposition: {0}")]
    MalformedDecomposition(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),
}

pub type Result<T> = std::result::Result<T, Error>;
