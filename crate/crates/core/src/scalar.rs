//! Value types a constructible function may take.
//!
//! The calculus only ever needs ring operations and exact halving, so any
//! [`Scalar`] works for evaluation. The obstruction search additionally needs
//! exact equality and hashing for deduplication, which [`ExactScalar`]
//! provides. `f64` is supported for evaluation only.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dyadic::Dyadic;

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_i64(value: i64) -> Self;

    fn half(&self) -> Self;

    fn is_integer(&self) -> bool;
}

/// Scalars with exact structural equality.
pub trait ExactScalar: Scalar + Eq + Hash + Ord {
    fn to_integer(&self) -> Option<BigInt>;
}

impl Scalar for Dyadic {
    fn from_i64(value: i64) -> Self {
        Dyadic::from_integer(value)
    }

    fn half(&self) -> Self {
        Dyadic::half(self)
    }

    fn is_integer(&self) -> bool {
        Dyadic::is_integer(self)
    }
}

impl ExactScalar for Dyadic {
    fn to_integer(&self) -> Option<BigInt> {
        Dyadic::to_integer(self)
    }
}

impl Scalar for BigRational {
    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn half(&self) -> Self {
        self / BigRational::from_integer(BigInt::from(2))
    }

    fn is_integer(&self) -> bool {
        BigRational::is_integer(self)
    }
}

impl ExactScalar for BigRational {
    fn to_integer(&self) -> Option<BigInt> {
        BigRational::is_integer(self).then(|| self.to_integer())
    }
}

macro_rules! impl_float_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn from_i64(value: i64) -> Self {
                value as $t
            }

            fn half(&self) -> Self {
                self * 0.5
            }

            fn is_integer(&self) -> bool {
                self.fract() == 0.0
            }
        }
    )*};
}

impl_float_scalar!(f32, f64);
