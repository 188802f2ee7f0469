//! Scalar abstraction shared by the evaluator, the tensors and the rank code.
//!
//! Every model value lives in a commutative ring that contains `√−1`. The
//! exact engine uses [`GaussianRational`]; `Complex<f64>` is available for
//! quick numerical experiments but is never used for rank decisions.

use std::fmt::Debug;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use super::gaussian::GaussianRational;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + MulAssign
    + Sum
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;

    /// A fixed square root of −1.
    fn imaginary_unit() -> Self;

    /// `self · i^n`, for any integer power.
    fn mul_i_pow(self, n: i64) -> Self {
        match n.rem_euclid(4) {
            0 => self,
            1 => self * Self::imaginary_unit(),
            2 => -self,
            _ => -(self * Self::imaginary_unit()),
        }
    }

    fn pow(&self, exp: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc *= self.clone();
        }
        acc
    }
}

/// A scalar type that is also a field.
pub trait Field: Scalar + Div<Output = Self> {}

/// Marker for fields with exact equality, the only ones rank is computed over.
pub trait ExactField: Field {}

impl Scalar for GaussianRational {
    fn from_i64(n: i64) -> Self {
        GaussianRational::from_integer(n)
    }

    fn imaginary_unit() -> Self {
        GaussianRational::i()
    }
}

impl Field for GaussianRational {}
impl ExactField for GaussianRational {}

impl Scalar for Complex<f64> {
    fn from_i64(n: i64) -> Self {
        Complex::new(n as f64, 0.0)
    }

    fn imaginary_unit() -> Self {
        Complex::i()
    }
}

impl Field for Complex<f64> {}
