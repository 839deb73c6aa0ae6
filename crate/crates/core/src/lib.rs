//! Trajectory similarity that is invariant to linear transformations.
//!
//! The central measure is the generalized multiple correlation coefficient
//! (GMCC): fit the least-squares affine map from one trajectory to the other
//! and report the square root of the fraction of variance it explains. It is
//! exactly 1 when one trajectory is a nonsingular linear (or affine) image of
//! the other, and it drops as soon as the relation stops being linear. The RV
//! coefficient and distance correlation are provided alongside for
//! comparison.
//!
//! ```
//! use gmcc::synth::{apply_transform, generate, make_transform, ShapeKind, ShapeSpec, TransformSpec};
//! use gmcc::metrics::gmcc_distance;
//!
//! let circle = generate(&ShapeSpec::canonical(ShapeKind::Circle, 100)).unwrap();
//! let shear = make_transform(&TransformSpec::Shear(0.5)).unwrap();
//! let sheared = apply_transform(&circle, &shear, true).unwrap();
//! assert!(gmcc_distance(&circle, &sheared).unwrap() < 1e-9);
//! ```
//!
//! Module map:
//!
//! * [`trajectory`]: the `T x n` sample type, centering, resampling.
//! * [`regression`]: affine least squares via SVD.
//! * [`metrics`]: Pearson, multiple correlation, GMCC, RV, dCor, distance matrices.
//! * [`synth`]: canonical shapes, noise, transforms, labelled datasets.
//! * [`cluster`]: average-linkage dendrograms, flat cuts, purity.
//! * [`classify`]: nearest-neighbour gesture classification.
//! * [`io`]: file formats and SVG figures.
//! * [`experiments`]: the noise, transform, line-vs-circle and clustering studies.
//! * [`cli`]: the `gmcc` command-line front end.

pub mod classify;
pub mod cli;
pub mod cluster;
mod error;
pub mod experiments;
pub mod io;
pub mod metrics;
pub mod regression;
pub mod synth;
pub mod trajectory;

pub use error::{Error, Result};
pub use metrics::{DistanceMatrix, MetricKind};
pub use trajectory::Trajectory;
