//! The two-coin case of the Frobenius problem.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::error::RepresentError;
use crate::scalar::Weight;

fn require_coprime<T: Weight>(a: &T, b: &T) -> Result<(), RepresentError> {
    if a.gcd(b).is_one() {
        Ok(())
    } else {
        Err(RepresentError::NotCoprime {
            a: a.to_string(),
            b: b.to_string(),
        })
    }
}

/// `ab - a - b`, the largest integer that is not a nonnegative combination
/// of the coprime integers `a, b >= 2`.
pub fn sylvester_frobenius<T: Weight>(a: &T, b: &T) -> Result<T, RepresentError> {
    let two = T::small(2);
    if *a < two || *b < two {
        return Err(RepresentError::Precondition(format!(
            "both coins must be at least 2, got {a} and {b}"
        )));
    }
    require_coprime(a, b)?;
    Ok(a.clone() * b.clone() - a.clone() - b.clone())
}

/// Nonnegative `(β_0, β_1)` with `m = β_0 a + β_1 b`, taking the smallest
/// possible `β_1`. Always `Some` once `m > ab - a - b`.
pub fn two_coin_representation<T: Weight>(m: &T, a: &T, b: &T) -> Result<Option<(T, T)>, RepresentError> {
    if a.is_zero() || b.is_zero() {
        return Err(RepresentError::Precondition("coins must be positive".into()));
    }
    require_coprime(a, b)?;
    // β_1 ≡ m b^{-1} (mod a)
    let (ai, bi, mi) = (a.to_bigint(), b.to_bigint(), m.to_bigint());
    let inverse = Integer::extended_gcd(&bi, &ai).x.mod_floor(&ai);
    let beta1 = (mi.clone() * inverse).mod_floor(&ai);
    let rest = mi - &beta1 * &bi;
    if rest.is_negative() {
        return Ok(None);
    }
    let beta0 = rest / &ai;
    let to_t = |v: BigInt| T::from_biguint(&v.to_biguint().expect("nonnegative"));
    Ok(Some((
        to_t(beta0).expect("β_0 <= m fits"),
        to_t(beta1).expect("β_1 < a fits"),
    )))
}
