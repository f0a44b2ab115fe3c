use thiserror::Error;

#[derive(Debug, Error)]
pub enum ArwError {
    #[error("{0} is not representable as a sum of two squares")]
    NotRepresentable(u64),

    #[error("invalid value for `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("energy level {m} has {n} lattice points, need at least {needed}")]
    TooFewPoints { m: u64, n: usize, needed: usize },

    #[error("bound kind {kind} requires a rational-slope direction")]
    DirectionMismatch { kind: &'static str },

    #[error("config line {line}: {reason}")]
    Config { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, ArwError>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> ArwError {
    ArwError::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
