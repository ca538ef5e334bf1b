//! Floating-point abstraction shared by every module.
//!
//! All state and measure code is written against [`Real`], so the same
//! algorithms run in `f64` (the default everywhere) and `f32`. Tolerances are
//! part of the trait because a bound that is sensible for double precision is
//! meaningless for single precision.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Slack for validating construction invariants (normalization, positivity, weight sums).
    fn validation_tol() -> Self;

    /// Slack for reassembly checks (remixing an ensemble, rebuilding a matrix from its spectrum).
    fn reassembly_tol() -> Self;

    /// Slack used when comparing monotone values in feasibility decisions.
    fn comparison_tol() -> Self;
}

impl Real for f64 {
    fn validation_tol() -> Self {
        1e-12
    }

    fn reassembly_tol() -> Self {
        1e-10
    }

    fn comparison_tol() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn validation_tol() -> Self {
        1e-5
    }

    fn reassembly_tol() -> Self {
        1e-4
    }

    fn comparison_tol() -> Self {
        1e-5
    }
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in every Real")
}

/// Lossy conversion to `f64`, used for error payloads and serialization.
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[inline]
pub(crate) fn half<T: Real>() -> T {
    lit(0.5)
}

#[inline]
pub(crate) fn two<T: Real>() -> T {
    T::one() + T::one()
}
