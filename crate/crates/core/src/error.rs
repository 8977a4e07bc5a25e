use thiserror::Error;

/// Errors raised across the crate.
///
/// Graph-axiom violations name the violated axiom so that a bad input file
/// can be fixed without reading the loader.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph axiom violated ({axiom}): {detail}")]
    GraphAxiom { axiom: &'static str, detail: String },

    #[error("unknown vertex id {0:?}")]
    UnknownVertex(String),

    #[error("vertex function has {got} values but the graph has {expected} vertices")]
    VertexMismatch { expected: usize, got: usize },

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("the origin has no dipole")]
    OriginDipole,

    #[error("truncation depth {depth} is shallower than word length {length}")]
    DepthTooSmall { depth: usize, length: usize },

    #[error("invalid residue system: {0}")]
    ResidueSystem(String),

    #[error("invalid word family: {0}")]
    WordFamily(String),

    #[error("matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {gap:e}")]
    NotSymmetric { row: usize, col: usize, gap: f64 },

    #[error("matrix is not square or has inconsistent rows")]
    NotSquare,

    #[error("singular linear system: {0}")]
    Singular(String),

    #[error("energy norm of the input is zero")]
    ZeroEnergy,

    #[error("invalid transition kernel: {0}")]
    Kernel(String),

    #[error("invalid measure: {0}")]
    Measure(String),

    #[error("reducible kernel: {0}")]
    Reducible(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid filter: {0}")]
    Filter(String),

    #[error("negative weight {value:e} at t = {at}")]
    NegativeWeight { value: f64, at: f64 },

    #[error("dyadic angle overflow: level {0} exceeds 127")]
    LevelOverflow(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
