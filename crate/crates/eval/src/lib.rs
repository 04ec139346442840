//! Evaluation harness: prompt construction, model querying over a
//! pluggable transport, rule-based answer extraction and scoring.

pub mod extract;
pub mod harness;
pub mod prompt;
pub mod score;
pub mod transport;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("dataset error: {0}")]
    Dataset(#[from] spatialkit_forge::dataset::DatasetError),
    #[error("render error: {0}")]
    Render(#[from] spatialkit_core::render::RenderError),
    #[error("record {0} does not appear in the manifest")]
    UnknownRecord(String),
    #[error("io error at {0}: {1}")]
    Io(std::path::PathBuf, std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
