use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, ToPrimitive};

/// Number type the local model can be evaluated in.
///
/// Exact rationals give the identities used by the property tests; floats
/// give fast approximate tables. Everything in [`crate::localmodel`] is
/// written against this trait.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Neg<Output = Self> {
    fn from_u64(v: u64) -> Self;

    fn from_ratio(numer: i64, denom: u64) -> Self;

    fn from_big_ratio(r: &BigRational) -> Self;

    fn as_f64(&self) -> f64;

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Scalar for f64 {
    fn from_u64(v: u64) -> Self {
        v as f64
    }

    fn from_ratio(numer: i64, denom: u64) -> Self {
        numer as f64 / denom as f64
    }

    fn from_big_ratio(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn as_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_u64(v: u64) -> Self {
        v as f32
    }

    fn from_ratio(numer: i64, denom: u64) -> Self {
        (numer as f64 / denom as f64) as f32
    }

    fn from_big_ratio(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN) as f32
    }

    fn as_f64(&self) -> f64 {
        *self as f64
    }
}

impl Scalar for BigRational {
    fn from_u64(v: u64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(numer: i64, denom: u64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn from_big_ratio(r: &BigRational) -> Self {
        r.clone()
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for Ratio<i128> {
    fn from_u64(v: u64) -> Self {
        Ratio::from_integer(v as i128)
    }

    fn from_ratio(numer: i64, denom: u64) -> Self {
        Ratio::new(numer as i128, denom as i128)
    }

    /// Panics if the reduced fraction does not fit in `i128`.
    fn from_big_ratio(r: &BigRational) -> Self {
        let numer = r.numer().to_i128().expect("numerator overflows i128");
        let denom = r.denom().to_i128().expect("denominator overflows i128");
        Ratio::new(numer, denom)
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}
