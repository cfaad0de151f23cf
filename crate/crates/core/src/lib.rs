//! Arithmetic of degree/weight pairs for weighted complete intersections.

pub mod construct;
pub mod error;
pub mod hodge;
pub mod json;
pub mod pairs;
pub mod primes;
pub mod represent;
pub mod reproduce;
pub mod scalar;
pub mod series;
pub mod verify;

pub use error::{ConstructError, HodgeError, PairError, PrimeError, RepresentError};
pub use pairs::WeightedPair;
pub use scalar::Weight;

/// Pair over arbitrary-precision weights.
pub type Pair = pairs::WeightedPair<num_bigint::BigUint>;
/// Pair over machine weights.
pub type SmallPair = pairs::WeightedPair<u64>;
/// Exact rationals.
pub type ExactRational = num_rational::BigRational;
