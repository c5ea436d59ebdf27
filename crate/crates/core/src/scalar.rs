//! Scalar abstraction: the numeric code runs at `f32` or `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

/// Floating-point scalar for all geometry, energies and statistics.
pub trait Real:
    num_traits::Float
    + num_traits::FromPrimitive
    + num_traits::NumCast
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossless-enough conversion from `f64` literals and constants.
    fn from_f64_c(v: f64) -> Self {
        Self::from_f64(v).expect("constant representable in scalar type")
    }

    /// Conversion to `f64` for reporting and serialization.
    fn to_f64_c(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand used all over the numeric modules.
#[inline]
pub fn c<T: Real>(v: f64) -> T {
    T::from_f64_c(v)
}
