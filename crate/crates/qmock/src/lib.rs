//! File formats and the command-line front end for `qmock-core`.

pub mod cli;
pub mod json;
pub mod registry;
pub mod table;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Core(#[from] qmock_core::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("not an integer: {0:?}")]
    BadInteger(String),
    #[error("not in lowest terms with a positive denominator: {0:?}")]
    NonCanonical(String),
    #[error("expected header m,n,phi_num,phi_den,route")]
    BadHeader,
    #[error("unknown route {0:?}")]
    UnknownRoute(String),
}
