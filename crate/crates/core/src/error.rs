use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCap { order: u128, cap: usize },

    #[error("enumeration budget of {limit} relator evaluations exceeded{hint}")]
    BudgetExceeded { limit: u64, hint: String },

    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid wreath data: {0}")]
    InvalidWreath(String),

    #[error("series error: {0}")]
    Series(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("i/o error reading {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    /// True for resource-limit errors (order cap, enumeration budget).
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::OrderCap { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
