//! Coefficient fields the exact kernel can run over.
//!
//! Everything in this crate is exact. The kernel is written against
//! [`Scalar`] so that small computations can run over machine-word
//! rationals while the default pipeline uses arbitrary precision
//! ([`crate::Q`]).

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// An exact field of characteristic zero.
///
/// Floating point types are deliberately not implemented: the projector and
/// the cyclotomic cancellation rely on exact zero tests.
pub trait Scalar:
    Num + Signed + FromPrimitive + Clone + Debug + Display + Send + Sync + 'static
{
    fn is_integral(&self) -> bool;

    /// Lossless conversion to an arbitrary precision rational.
    fn to_big(&self) -> BigRational;

    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("integer fits the scalar type")
    }
}

macro_rules! ratio_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for Ratio<$t> {
            fn is_integral(&self) -> bool {
                self.is_integer()
            }

            fn to_big(&self) -> BigRational {
                BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }
        }
    )*};
}

ratio_scalar!(i32, i64, i128);

impl Scalar for BigRational {
    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn to_big(&self) -> BigRational {
        self.clone()
    }
}

/// Converts an integral scalar to `i64`, if it is one and fits.
pub fn to_i64<T: Scalar>(x: &T) -> Option<i64> {
    let big = x.to_big();
    if !big.is_integer() {
        return None;
    }
    big.to_integer().to_i64()
}

pub(crate) fn from_u128<T: Scalar>(n: u128) -> T {
    T::from_u128(n).expect("count fits the scalar type")
}
