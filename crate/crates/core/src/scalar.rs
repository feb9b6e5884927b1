//! Exact integer scalars.
//!
//! Every kernel in this crate is generic over [`Scalar`], an exact
//! Euclidean-ring integer type. [`num_bigint::BigInt`] is the default used by
//! the crate-root aliases; fixed-width `i64`/`i128` work as well when the
//! caller knows intermediate minors stay in range. Floating-point types are
//! deliberately not scalars: fraction-free elimination relies on exact
//! division.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};

/// Exact signed integer usable as a matrix entry.
pub trait Scalar:
    Clone + Debug + Display + Integer + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Lossless conversion from a machine integer.
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("scalar type cannot represent i64 value")
    }
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + Integer + Signed + FromPrimitive + Send + Sync + 'static
{
}

/// Sign of an exact value: `-1`, `0` or `+1`.
pub fn sign_of<T: Scalar>(v: &T) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_negative() {
        -1
    } else {
        1
    }
}
