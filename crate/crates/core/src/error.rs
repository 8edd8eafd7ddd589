use thiserror::Error;

use crate::tiling::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed tiling: {0}")]
    MalformedTiling(Violation),

    /// A vertex set handed to a matching step has odd size.
    #[error("invalid syndrome: {len} vertices, a perfect matching needs an even count")]
    InvalidSyndrome { len: usize },

    #[error("no perfect matching on {nodes} nodes")]
    NoPerfectMatching { nodes: usize },

    #[error("brute-force matching is limited to {limit} nodes, got {nodes}")]
    SizeLimit { nodes: usize, limit: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no crossing found: {direction}")]
    NoCrossing { direction: String },

    #[error("decoding failed in trial {trial} (size {size}, p = {p}): {source}")]
    Trial {
        trial: u64,
        size: usize,
        p: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
