//! Exact computations on higher-dimensional rooted forests.
//!
//! Given a simplicial or cell complex of dimension `d`, the crate builds its
//! integer boundary matrices, enumerates rooted forests `(F, R)` with their
//! homological weights `|det ∂[R̄, F]|`, and checks them against the shifted
//! characteristic polynomial `det(L + x Id)` of the Laplacian `L = ∂ ∂ᵀ`.
//! Fitting orientations, their signs and oriented strips give a second,
//! signed enumeration of the same polynomial.
//!
//! All arithmetic is exact. The kernels are generic over [`Scalar`]; the
//! aliases below fix the scalar to [`BigInt`], which is what the CLI uses.

pub mod complex;
pub mod error;
pub mod forests;
pub mod format;
pub mod generators;
pub mod linalg;
pub mod orientations;
pub mod scalar;

pub use num_bigint::BigInt;

pub use complex::{CellComplexData, Complex, Face, Incidence, SimplicialComplex};
pub use error::{Error, NotRootedReason, Result};
pub use forests::{Caps, FaceSubset, LaplacianWeighting};
pub use orientations::{FittingOrientation, OrientationSign, Strip, StripDecomposition};
pub use scalar::Scalar;

/// Arbitrary-precision integer matrix.
pub type IntMatrix = linalg::Matrix<BigInt>;
/// Polynomial with arbitrary-precision integer coefficients.
pub type IntPolynomial = linalg::Polynomial<BigInt>;
pub type SmithForm = linalg::SmithForm<BigInt>;
pub type ForestContext = forests::ForestContext<BigInt>;
pub type RootedForest = forests::RootedForest<BigInt>;
pub type WeightAssignment = forests::WeightAssignment<BigInt>;
pub type BiDirectedForest = orientations::BiDirectedForest<BigInt>;
pub type BidirectedPolynomials = orientations::BidirectedPolynomials<BigInt>;
