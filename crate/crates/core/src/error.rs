use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("mismatched roots of unity: ell={0} vs ell={1}")]
    EllMismatch(u32, u32),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("relation `{relation}` fails (witness column {witness})")]
    RelationFailed { relation: String, witness: usize },

    #[error("subspace is not stable under the action: {0}")]
    NotStable(String),

    #[error("window too small: no suitable tilting found with highest weights up to {bound}")]
    WindowTooSmall { bound: u32 },

    #[error("endomorphism algebra does not split over the ground field: {0}")]
    NonSplit(String),

    #[error("label {label} exceeds ideal window {window}")]
    WindowOverflow { label: u32, window: u32 },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
