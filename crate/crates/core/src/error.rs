use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Error)]
pub enum FcyError {
    #[error("{field}: unknown vertex {id:?}")]
    UnknownVertex { field: String, id: String },
    #[error("{field}: unknown arrow {id:?}")]
    UnknownArrow { field: String, id: String },
    #[error("duplicate identifier {0:?}")]
    DuplicateId(String),
    #[error("{field}: {message}")]
    Malformed { field: String, message: String },
    #[error("relation {relation}: term {term} has length {len}, relations need length >= 2")]
    NonAdmissibleRelation {
        relation: usize,
        term: usize,
        len: usize,
    },
    #[error("normal words persist at length {max_len}; the quotient is not certified finite-dimensional")]
    DimensionBoundExceeded { max_len: usize },
    #[error("no Dynkin diagram of type {ty}{n}")]
    InvalidDynkin { ty: String, n: usize },
    #[error("quiver has an oriented cycle")]
    CyclicQuiver,
    #[error("cycle {cycle} meets the cut {hits} times")]
    CutNotConsistent { cycle: String, hits: usize },
    #[error("presentation is not homogeneous; graded operations are unavailable")]
    NotHomogeneous,
    #[error("algebra is not connected")]
    NotConnected,
    #[error("no order found up to k = {k_max}")]
    NoOrderFound { k_max: usize },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("verification failed: {0}")]
    VerificationFailure(String),
    #[error("bilinear form is degenerate: {0}")]
    InternalNondegeneracyFailure(String),
    #[error("socle of projective at {0} is not homogeneous")]
    NonHomogeneousSocle(String),
    #[error("not a Frobenius algebra: {0}")]
    NotFrobenius(String),
    #[error("window [{lo}, {hi}] does not contain degree {degree}")]
    WindowTooSmall { degree: i64, lo: i64, hi: i64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = FcyError> = std::result::Result<T, E>;
