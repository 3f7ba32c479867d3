//! Closed-form reference tables for the spin geometry of `R x S^3` and a
//! comparator that checks the engine against them.
//!
//! The tables are transcribed by hand and share no code with the engine
//! beyond the point and scale-factor types.

#![allow(clippy::needless_range_loop)]

pub mod compare;
pub mod coords;
pub mod registry;
pub mod tables;

pub use compare::{compare, ComparisonEntry, ComparisonReport, Status};
pub use registry::{evaluate_engine, evaluate_reference, Home, ReferenceEntry, REGISTRY};
pub use tables::{Axis, Erratum, ReferenceTensor};
