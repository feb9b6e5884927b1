//! Exact integer linear algebra kernels.

// Elimination loops index several rows at once.
#[allow(clippy::needless_range_loop)]
mod elimination;
mod matrix;
mod poly;
#[allow(clippy::needless_range_loop)]
mod smith;

pub use elimination::{det, det_checked_i128, rank, EchelonBasis};
pub use matrix::Matrix;
pub use poly::{char_poly_shifted, interpolate_consecutive, Polynomial};
pub use smith::{smith_normal_form, SmithForm};
