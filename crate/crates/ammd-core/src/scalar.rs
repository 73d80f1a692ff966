//! Floating-point scalar abstraction.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FromPrimitive};

/// Scalar type for all geometry and distance computations: `f32` or `f64`.
pub trait Real:
    Float + FromPrimitive + FromStr + Sum + Debug + Display + Default + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Convert an `f64` constant into the working scalar type.
pub(crate) fn real<R: Real>(x: f64) -> R {
    R::from_f64(x).expect("constant representable in scalar type")
}
