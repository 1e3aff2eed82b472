//! Finite models of permutative relative categories, Fact operads and the
//! Perm construction, with exhaustive law checking.

pub mod fincat;
pub mod finstar;
pub mod factop;
pub mod fixtures;
pub mod permcat;
pub mod permconstr;
pub mod relcat;
pub mod sset;
pub mod suite;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Category(#[from] fincat::CategoryError),
    #[error("{0}")]
    Invalid(String),
}
