use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("branch mismatch: no solution branch agrees with the seed")]
    BranchMismatch,

    #[error("ambiguous seed, extend it (seed length {0})")]
    AmbiguousSeed(usize),

    #[error("composition requires an inner series with zero constant term")]
    NonZeroConstantTerm,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("coefficient {n} requested but series is truncated at {order}; raise truncation")]
    RaiseTruncation { n: usize, order: usize },

    #[error("singularity selection failed: {0}")]
    SingularitySelection(String),

    #[error("negative radicand in subexponential constant: {0}")]
    NegativeRadicand(String),

    #[error("degenerate factor: {0}")]
    DegenerateFactor(String),

    #[error("instance too large for oracle: {points} points exceeds cap {cap}")]
    OracleTooLarge { points: usize, cap: usize },

    #[error("construction stuck: {0}")]
    ConstructionStuck(String),

    #[error("parameter outside domain: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
