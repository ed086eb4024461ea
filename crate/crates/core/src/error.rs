use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("metric violation: {0}")]
    NotMetric(String),

    #[error("capacities are not {{0, L}}: {0}")]
    NotZeroL(String),

    #[error("graph is not connected")]
    Disconnected,

    #[error("alpha = {alpha} exceeds the fixed-alpha bound {bound} for this algorithm")]
    AlphaBound { alpha: usize, bound: usize },

    #[error("instance exceeds oracle size limit: {0}")]
    SizeLimit(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("integer overflow while scaling {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::ContractViolation(msg.into())
}
