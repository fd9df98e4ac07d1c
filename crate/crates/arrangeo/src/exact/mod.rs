//! Exact coordinates and the geometry of arrangements.

pub mod geometry;
pub mod scalar;

pub use geometry::{Arrangement, Component, Conic, Line, PointKind, PointXY};
pub use scalar::{ExactScalar, Q};
