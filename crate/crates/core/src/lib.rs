//! Spin geometry engine for the closed homogeneous isotropic universe
//! `M = R x S^3`.
//!
//! The crate is organised bottom-up: a scale factor `R(eta)` drives three
//! coordinate charts, four orthonormal tangent frames, the double cover
//! `SL(2,C) -> SO+(1,3)`, the Weyl and Dirac basic fields, and finally the
//! metric connection and its curvature.  Every derivative is taken with
//! forward-mode dual numbers (see [`dual`]), nested where curvature needs a
//! second derivative.

#![allow(clippy::needless_range_loop)]

pub mod charts;
pub mod connection;
pub mod curvature;
pub mod dual;
pub mod error;
pub mod frames;
pub mod scale_factor;
pub mod spin_bundles;
pub mod spin_lift;

pub use charts::{ChartId, EmbeddedPoint, Point};
pub use error::GeometryError;
pub use frames::FrameId;
pub use scale_factor::ScaleFactor;
pub use spin_bundles::{FramePair, FramePairClass, SpinorFrame};
pub use spin_lift::{LorentzMatrix, SpinMatrix2, SpinMatrix4};

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, GeometryError>;

/// Minkowski matrix `diag(1,-1,-1,-1)` of an orthonormal frame.
pub const MINKOWSKI: [f64; 4] = [1.0, -1.0, -1.0, -1.0];
