use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid region ({x}, {y}, {width}, {height}): {reason}")]
    InvalidRegion {
        x: f64,
        y: f64,
        width: f64,
        height: f64,
        reason: &'static str,
    },

    #[error("degenerate region {width}x{height} has no measurable aspect ratio")]
    DegenerateRegion { width: f64, height: f64 },

    #[error("strip thickness {thickness} exceeds available extent {extent}")]
    ThicknessExceedsExtent { thickness: f64, extent: f64 },

    #[error("node `{path}`: weight must be a finite positive number, got {weight}")]
    NonPositiveWeight { path: String, weight: f64 },

    #[error("node `{path}`: {reason}")]
    InvalidNode { path: String, reason: String },

    #[error("layout has no leaf rectangles to measure")]
    EmptyLayout,

    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid benchmark configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot aggregate an empty record set")]
    EmptyRecords,

    #[error("records mix tree sizes {0} and {1}; aggregate one size at a time")]
    MixedSizes(usize, usize),

    #[error("layout failed for size {size}, rep {rep}, seed {seed:#018x}: {source}")]
    RunFailed {
        size: usize,
        rep: usize,
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("malformed records CSV: {0}")]
    MalformedRecords(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
