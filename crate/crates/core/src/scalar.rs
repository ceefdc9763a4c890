//! Numeric abstraction shared by every module.
//!
//! Photon-number algebra only needs field operations, so it runs over any
//! [`Scalar`], including exact rationals. Anything that takes square roots or
//! complex phases asks for [`Real`] instead.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, Num, ToPrimitive};

/// Field element usable as a probability.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Send + Sync + 'static {
    /// Exact image of a non-negative integer count.
    fn from_count(n: u64) -> Self;

    /// Nearest representable value of an `f64` (exact for dyadic rationals).
    fn from_f64(x: f64) -> Self;

    fn as_f64(&self) -> f64;

    fn powu(&self, exp: u32) -> Self {
        num_traits::pow(self.clone(), exp as usize)
    }

    fn is_finite_value(&self) -> bool {
        true
    }
}

/// Floating-point scalar with transcendental functions.
pub trait Real: Scalar + Float + FloatConst {}

impl Scalar for f64 {
    fn from_count(n: u64) -> Self {
        n as f64
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn as_f64(&self) -> f64 {
        *self
    }
    fn powu(&self, exp: u32) -> Self {
        self.powi(exp as i32)
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for f32 {
    fn from_count(n: u64) -> Self {
        n as f32
    }
    fn from_f64(x: f64) -> Self {
        x as f32
    }
    fn as_f64(&self) -> f64 {
        *self as f64
    }
    fn powu(&self, exp: u32) -> Self {
        self.powi(exp as i32)
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for BigRational {
    fn from_count(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).expect("finite f64")
    }
    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Real for f64 {}
impl Real for f32 {}

/// Checks `lo <= x <= hi`, rejecting NaN.
pub(crate) fn in_closed<S: Scalar>(x: &S, lo: S, hi: S) -> bool {
    x.is_finite_value() && *x >= lo && *x <= hi
}
