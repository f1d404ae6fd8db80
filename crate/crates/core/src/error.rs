use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge ({0}, {1}) has an endpoint outside 1..={2}")]
    EndpointOutOfRange(usize, usize, usize),
    #[error("edge ({0}, {0}) is a loop")]
    LoopEdge(usize),
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {0} is outside 1..={1}")]
    VertexOutOfRange(usize, usize),
    #[error("labeling is not a permutation of 1..={0}")]
    InvalidLabeling(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{what}: size {size} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        size: u64,
        bound: u64,
    },
    #[error("{0} is not a prime (or is too large for the coefficient field)")]
    NotPrime(u64),
    #[error("vertex {0} is not a leaf")]
    NotALeaf(usize),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("{0:?} is not a cut set")]
    NotCutSet(Vec<usize>),
    #[error("family mismatch: {0}")]
    FamilyMismatch(String),
    #[error("proof arithmetic failed: claimed order {claimed} but height is {height}")]
    ProofArithmetic { claimed: u32, height: u32 },
    #[error("cofactor position {0} is not a factor of the witness")]
    InvalidCofactor(usize),
    #[error("canonical witness needs at least 2 vertices, got {0}")]
    WitnessTooSmall(usize),
    #[error("groebner budget exceeded: {0}")]
    Budget(String),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
