//! Floating point scalar abstraction.
//!
//! Everything numeric in the crate is generic over [`Real`], which is
//! implemented for `f32` and `f64`. Model coefficients are written as `f64`
//! literals and converted with [`lit`].

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// floating point: f32 or f64
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` constant into the working scalar type.
#[inline(always)]
pub fn lit<T: Real>(x: f64) -> T {
    // f32/f64 conversions from f64 never fail
    T::from_f64(x).unwrap()
}

/// Converts a working scalar back to `f64` for reporting and output.
#[inline(always)]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Evaluates `c[0] + c[1] z + c[2] z^2 + ...` by Horner's rule.
pub fn horner<T: Real>(coeffs: &[f64], z: T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * z + lit(c))
}

/// Exact mean of the polynomial over `[0, 1]`, i.e. `sum c[k] / (k + 1)`.
pub fn unit_mean<T: Real>(coeffs: &[f64]) -> T {
    coeffs
        .iter()
        .enumerate()
        .map(|(k, &c)| lit::<T>(c) / lit::<T>((k + 1) as f64))
        .fold(T::zero(), |a, b| a + b)
}
