//! Crate-wide error type.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A 3D point landed at or behind the camera plane; the depth
    /// hypothesis that produced it must be discarded.
    #[error("point behind camera (z = {z} m)")]
    BehindCamera { z: f64 },

    /// Required 2D joint detections are missing or degenerate.
    #[error("missing joint detections: {0}")]
    MissingJoints(String),

    /// A mask has no usable foreground (or no background) pixels.
    #[error("degenerate mask: {0}")]
    EmptyMask(String),

    /// Image too small for the requested pyramid depth.
    #[error("image {width}x{height} too small for {levels} pyramid levels")]
    TooSmall { width: usize, height: usize, levels: usize },

    /// Two fields that must share a resolution do not.
    #[error("resolution mismatch: {0}x{1} vs {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),

    /// Every depth candidate errored during a single-view fit.
    #[error("all depth candidates failed: {0}")]
    AllCandidatesFailed(String),

    /// Outlier rejection left no usable views.
    #[error("no inlier views to optimize")]
    NoInliers,

    /// KDE built over an empty sample set.
    #[error("kernel density estimate needs at least one sample")]
    EmptySamples,

    /// A statistics fit received no observations.
    #[error("no data: {0}")]
    NoData(String),

    /// A per-group fit is missing one of the groups.
    #[error("missing group: {0}")]
    MissingGroup(String),

    /// A user lacks the shape coordinate required by the model.
    #[error("missing shape coordinate: {0}")]
    MissingShape(String),

    /// Invalid argument or configuration.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Malformed input file (with location detail where available).
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
