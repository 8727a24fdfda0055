//! Exact curvature computations and pseudosymmetry classification for
//! metrics given in coordinates.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod chart;
pub mod classify;
pub mod geometry;
pub mod linalg;
pub mod linsolve;
pub mod tensor;
pub mod zoo;

pub use chart::{Chart, ChartError};
pub use tensor::{OneForm, Tensor};
