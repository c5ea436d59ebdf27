//! Body shape estimation from 2D joint detections and silhouette masks.
//!
//! The pipeline fits an articulated capsule body (10 shape coefficients,
//! per-joint axis-angle pose, pinhole camera translation) to one or many
//! photos' worth of evidence, searching over depth initializations and
//! rejecting outlier views before a joint multi-photo optimization that
//! shares a single shape across views. A statistics layer relates the
//! recovered second shape coefficient to clothing-category preferences
//! through kernel density estimates and Bayes posteriors.
//!
//! All numeric code is generic over the scalar type (`f32` or `f64`)
//! through the [`Real`] trait; concrete aliases for the main entry types
//! live at the crate root.

pub mod bodymodel;
pub mod benchgen;
pub mod clothmodel;
pub mod error;
pub mod fitting;
pub mod io;
pub mod math;
pub mod projection;
pub mod scalar;
pub mod silhouette;

pub use error::{Error, Result};
pub use scalar::Real;

/// Shape coefficients at double precision (the default pipeline scalar).
pub type Shape64 = bodymodel::ShapeParams<f64>;
/// Shape coefficients at single precision.
pub type Shape32 = bodymodel::ShapeParams<f32>;
/// Pose at double precision.
pub type Pose64 = bodymodel::PoseParams<f64>;
/// Camera at double precision.
pub type Camera64 = projection::CameraPose<f64>;
