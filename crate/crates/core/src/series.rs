//! Truncated power series of the form `Π (1 - t^e) / Π (1 - t^f)`.
//!
//! The coefficient type is generic so the common case runs on checked `i128`
//! and only falls back to `BigInt` on overflow.

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedSub, One, Zero};

/// Coefficients `0..=degree` of `Π_e (1 - t^e) / Π_f (1 - t^f)`.
///
/// Exponents above `degree` do not affect the truncation and are skipped.
/// Returns `None` if any intermediate coefficient overflows `C`.
pub fn quotient_coefficients<C>(numerator: &[usize], denominator: &[usize], degree: usize) -> Option<Vec<C>>
where
    C: Clone + Zero + One + CheckedAdd + CheckedSub,
{
    let mut coeffs = vec![C::zero(); degree + 1];
    coeffs[0] = C::one();
    for &f in denominator.iter().filter(|&&f| f <= degree) {
        // multiply by 1/(1 - t^f): running sums with stride f
        for j in f..=degree {
            coeffs[j] = coeffs[j].checked_add(&coeffs[j - f])?;
        }
    }
    for &e in numerator.iter().filter(|&&e| e <= degree) {
        // multiply by (1 - t^e), descending so each source is still old
        for j in (e..=degree).rev() {
            coeffs[j] = coeffs[j].checked_sub(&coeffs[j - e])?;
        }
    }
    Some(coeffs)
}

/// Exact coefficients, trying `i128` first.
pub fn exact_quotient_coefficients(numerator: &[usize], denominator: &[usize], degree: usize) -> Vec<BigInt> {
    match quotient_coefficients::<i128>(numerator, denominator, degree) {
        Some(small) => small.into_iter().map(BigInt::from).collect(),
        None => quotient_coefficients::<BigInt>(numerator, denominator, degree)
            .expect("BigInt arithmetic does not overflow"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_and_binomial() {
        let c = exact_quotient_coefficients(&[], &[1, 1, 1, 1], 3);
        assert_eq!(c, [1, 4, 10, 20].map(BigInt::from));
        let c = exact_quotient_coefficients(&[6], &[1, 1, 1, 1], 6);
        assert_eq!(c, [1, 4, 10, 20, 35, 56, 83].map(BigInt::from));
    }

    #[test]
    fn overflow_falls_back() {
        let ones = vec![1usize; 40];
        assert!(quotient_coefficients::<i64>(&[], &ones, 200).is_none());
        let big = exact_quotient_coefficients(&[], &ones, 200);
        // C(239, 39)
        let expected: BigInt = (1..=39u32).fold(BigInt::one(), |acc, j| acc * BigInt::from(200 + j) / BigInt::from(j));
        assert_eq!(big[200], expected);
    }
}
