//! Scalar abstraction shared by every numerical layer.
//!
//! All linear algebra is generic over a real scalar so the whole stack can
//! run in `f32` or `f64`; the crate root exports `f64` aliases, which is
//! what the tolerances below are calibrated for.

use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt::{Debug, Display};

/// Real scalar for all numerics, implemented for `f32` and `f64`.
///
/// Tolerances come in two grades: [`Real::tol_exact`] for identities that
/// hold to rounding error (Hermiticity checks, algebraic identities,
/// closed-form expectation values) and [`Real::tol_iter`] for anything that
/// passes through an iterative eigensolve (eigenvalue grouping, reshape
/// determinants, direction-norm validation).
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Tolerance for analytic identities.
    fn tol_exact() -> Self;
    /// Tolerance for iteratively computed quantities.
    fn tol_iter() -> Self;
    /// Tolerance for product-witness residuals, one order looser than
    /// [`Real::tol_iter`].
    fn tol_witness() -> Self {
        Self::tol_iter() * Self::from_f64(10.0).unwrap()
    }
}

impl Real for f64 {
    fn tol_exact() -> Self {
        1e-12
    }
    fn tol_iter() -> Self {
        1e-9
    }
}

impl Real for f32 {
    fn tol_exact() -> Self {
        1e-5
    }
    fn tol_iter() -> Self {
        1e-3
    }
}

/// Converts an `f64` literal into the scalar type.
pub(crate) fn lit<R: Real>(x: f64) -> R {
    R::from_f64(x).expect("literal representable in the scalar type")
}
