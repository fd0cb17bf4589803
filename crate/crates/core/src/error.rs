use thiserror::Error;

/// Errors produced by the operator algebra, certificates, oracles and window search.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported dimension {0} (only n = 1 or n = 2)")]
    UnsupportedDimension(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("point set contains duplicate point at index {0}")]
    DuplicatePoint(usize),

    #[error("point set too large: {0} > 64")]
    TooManyPoints(usize),

    #[error("function is not square-integrable; use collocation_rank instead")]
    NotSquareIntegrable,

    #[error("cannot bound truncation error: no envelope and not flagged integrable")]
    UnboundedTruncation,

    #[error("no envelope available and heuristic sampling was not permitted")]
    EnvelopeRequired,

    #[error("function vanishes at the anchor point")]
    ZeroAnchor,

    #[error("evaluation point {0:?} hits a singularity")]
    SingularityHit(Vec<f64>),

    #[error("not certifiable: {0}")]
    NotCertifiable(String),

    #[error("inner product <f, g> is numerically zero ({0:e})")]
    NearOrthogonal(f64),

    #[error("window search failed: {0}")]
    SearchFailed(String),
}

impl Error {
    /// True for errors that reflect a numerical refusal rather than malformed input.
    pub fn is_numerical_refusal(&self) -> bool {
        matches!(
            self,
            Error::NotSquareIntegrable
                | Error::UnboundedTruncation
                | Error::EnvelopeRequired
                | Error::ZeroAnchor
                | Error::SingularityHit(_)
                | Error::NotCertifiable(_)
                | Error::NearOrthogonal(_)
                | Error::SearchFailed(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
