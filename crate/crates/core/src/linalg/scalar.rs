use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed};

/// Field element with exact arithmetic.
///
/// Implemented for rational types only.
pub trait ExactScalar: Clone + Debug + PartialOrd + Num + Signed + Send + Sync {
    fn from_int(v: i64) -> Self;
    fn to_big_rational(&self) -> BigRational;
}

impl ExactScalar for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_big_rational(&self) -> BigRational {
        self.clone()
    }
}

macro_rules! small_ratio {
    ($t:ty) => {
        impl ExactScalar for Ratio<$t> {
            fn from_int(v: i64) -> Self {
                Ratio::from_integer(v as $t)
            }

            fn to_big_rational(&self) -> BigRational {
                BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }
        }
    };
}

small_ratio!(i64);
small_ratio!(i128);
