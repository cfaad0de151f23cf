//! The unsigned integer scalar that degrees, weights and coefficients are
//! drawn from.
//!
//! Everything in [`crate::pairs`], [`crate::represent`] and [`crate::hodge`]
//! is generic over [`Weight`]. Small exhaustive scans run on `u64`; the
//! prime-product families run on [`BigUint`], where no fixed width is safe.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{FromPrimitive, ToPrimitive, Unsigned};

/// An unsigned integer usable as a degree, weight or coefficient.
pub trait Weight:
    Clone + Ord + Hash + Debug + Display + Integer + Unsigned + ToPrimitive + FromPrimitive + Send + Sync + 'static
{
    fn to_biguint(&self) -> BigUint;

    /// `None` when the value does not fit.
    fn from_biguint(value: &BigUint) -> Option<Self>;

    fn to_bigint(&self) -> BigInt {
        BigInt::from(self.to_biguint())
    }

    fn small(value: u64) -> Self {
        <Self as FromPrimitive>::from_u64(value).expect("every Weight holds u64 values")
    }

    /// `None` when `self < other`.
    fn checked_minus(&self, other: &Self) -> Option<Self> {
        if self < other {
            None
        } else {
            Some(self.clone() - other.clone())
        }
    }
}

macro_rules! impl_weight_primitive {
    ($($t:ty),*) => {$(
        impl Weight for $t {
            fn to_biguint(&self) -> BigUint {
                BigUint::from(*self)
            }

            fn from_biguint(value: &BigUint) -> Option<Self> {
                <$t>::try_from(value).ok()
            }
        }
    )*};
}

impl_weight_primitive!(u32, u64, u128);

impl Weight for BigUint {
    fn to_biguint(&self) -> BigUint {
        self.clone()
    }

    fn from_biguint(value: &BigUint) -> Option<Self> {
        Some(value.clone())
    }
}

pub(crate) fn sum<T: Weight>(values: &[T]) -> T {
    values.iter().fold(T::zero(), |acc, v| acc + v.clone())
}

/// `Σ coefficients[l] * weights[l]`.
pub(crate) fn dot<T: Weight>(coefficients: &[T], weights: &[T]) -> T {
    coefficients
        .iter()
        .zip(weights)
        .fold(T::zero(), |acc, (c, w)| acc + c.clone() * w.clone())
}

pub(crate) fn gcd_all<T: Weight>(values: impl IntoIterator<Item = T>) -> T {
    values.into_iter().fold(T::zero(), |acc, v| acc.gcd(&v))
}

/// Distinct prime factors in ascending order, by trial division.
pub(crate) fn prime_factors<T: Weight>(value: &T) -> Vec<T> {
    let mut out = Vec::new();
    let mut rest = value.clone();
    let mut candidate = T::small(2);
    while candidate.clone() * candidate.clone() <= rest {
        if rest.is_multiple_of(&candidate) {
            out.push(candidate.clone());
            while rest.is_multiple_of(&candidate) {
                rest = rest / candidate.clone();
            }
        }
        candidate = if candidate == T::small(2) {
            T::small(3)
        } else {
            candidate + T::small(2)
        };
    }
    if rest > T::one() {
        out.push(rest);
    }
    out
}

/// Largest `e` with `prime^e | value`; `value` must be nonzero.
pub(crate) fn valuation<T: Weight>(value: &T, prime: &T) -> u32 {
    let mut rest = value.clone();
    let mut e = 0;
    while !rest.is_zero() && rest.is_multiple_of(prime) {
        rest = rest / prime.clone();
        e += 1;
    }
    e
}
