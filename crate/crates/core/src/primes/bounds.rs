//! Rigorous enclosures of `ln x` and the prime-counting bounds built on them.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::sieve::PrimeTable;
use crate::error::PrimeError;
use crate::ExactRational;

/// `ln x` lies in `[lo, hi] / 2^bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LnEnclosure {
    pub lo: BigInt,
    pub hi: BigInt,
    pub bits: u32,
}

impl LnEnclosure {
    pub fn midpoint_f64(&self) -> f64 {
        let scale = 2f64.powi(self.bits as i32);
        (self.lo.to_f64().unwrap_or(f64::NAN) + self.hi.to_f64().unwrap_or(f64::NAN)) / 2.0 / scale
    }
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// Enclosure of `atanh(num/den)` for `0 <= num/den <= 1/3`, scaled by `2^bits`.
fn atanh_enclosure(num: &BigInt, den: &BigInt, bits: u32) -> (BigInt, BigInt) {
    let scale = BigInt::one() << bits;
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    if num.is_zero() {
        return (lo, hi);
    }
    let z2_num = num * num;
    let z2_den = den * den;
    // term j: z^(2j+1) / (2j+1)
    let mut pow_num = num.clone();
    let mut pow_den = den.clone();
    let mut j: u32 = 0;
    loop {
        let odd = BigInt::from(2 * j + 1);
        let scaled = &pow_num * &scale;
        let denom = &pow_den * &odd;
        lo += scaled.div_floor(&denom);
        hi += ceil_div(&scaled, &denom);
        pow_num *= &z2_num;
        pow_den *= &z2_den;
        j += 1;
        // stop once z^(2j+1) < 2^-bits
        if &pow_num * &scale < pow_den {
            break;
        }
    }
    // tail: Σ_{i>=j} z^(2i+1)/(2i+1) <= z^(2j+1) / ((2j+1)(1 - z^2))
    let tail_num = &pow_num * &z2_den * &scale;
    let tail_den = &pow_den * BigInt::from(2 * j + 1) * (&z2_den - &z2_num);
    hi += ceil_div(&tail_num, &tail_den);
    (lo, hi)
}

/// Rigorous enclosure of `ln x` for `x >= 1` at `bits` fractional bits, from
/// `ln x = k ln 2 + 2 atanh((x - 2^k)/(x + 2^k))` with `2^k <= x < 2^(k+1)`.
pub fn ln_enclosure(x: &BigUint, bits: u32) -> LnEnclosure {
    assert!(!x.is_zero(), "ln 0 is undefined");
    let k = x.bits() - 1;
    let power = BigInt::one() << k;
    let xi = BigInt::from(x.clone());
    let (ln2_lo, ln2_hi) = atanh_enclosure(&BigInt::one(), &BigInt::from(3), bits);
    let (m_lo, m_hi) = atanh_enclosure(&(&xi - &power), &(&xi + &power), bits);
    let k = BigInt::from(k);
    LnEnclosure {
        lo: (&k * ln2_lo + m_lo) * 2,
        hi: (&k * ln2_hi + m_hi) * 2,
        bits,
    }
}

/// Result of comparing `ln x` to a rational `r`.
fn compare_ln(x: &BigUint, r: &ExactRational) -> Result<std::cmp::Ordering, PrimeError> {
    use std::cmp::Ordering;
    let mut bits = 64;
    while bits <= 1 << 14 {
        let e = ln_enclosure(x, bits);
        let scaled = r * ExactRational::from_integer(BigInt::one() << bits);
        if ExactRational::from_integer(e.lo.clone()) > scaled {
            return Ok(Ordering::Greater);
        }
        if ExactRational::from_integer(e.hi.clone()) < scaled {
            return Ok(Ordering::Less);
        }
        bits *= 2;
    }
    Err(PrimeError::Invariant(format!("ln {x} could not be separated from {r}")))
}

/// Smallest `x` at which the lower bound `x / ln x < π(x)` is claimed.
pub const RS_LOWER_VALIDITY: u64 = 17;

/// Outcome of testing `x/ln x < π(x) < 1.25506 x/ln x`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RsCheck {
    pub x: u64,
    pub pi: u64,
    pub lower_holds: bool,
    pub upper_holds: bool,
    /// Floating-point approximations of the two bounds, for display only.
    pub lower_approx: f64,
    pub upper_approx: f64,
}

impl RsCheck {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

/// Checks both bounds with `π(x)` from `table`. Each verdict is exact: the
/// inequalities are rewritten as `ln x > x/π(x)` and
/// `ln x < 1.25506 x/π(x)`, and `ln x` is enclosed with outward rounding,
/// refining until the enclosure separates.
pub fn check_rs_inequality_with(table: &PrimeTable, x: u64) -> Result<RsCheck, PrimeError> {
    if x < RS_LOWER_VALIDITY {
        return Err(PrimeError::Precondition(format!(
            "the bounds are only claimed for x >= {RS_LOWER_VALIDITY}, got {x}"
        )));
    }
    let pi = table.pi(x)?;
    let xb = BigUint::from(x);
    let ratio = ExactRational::new(BigInt::from(x), BigInt::from(pi));
    let alpha = ExactRational::new(BigInt::from(125_506), BigInt::from(100_000));
    let lower_holds = compare_ln(&xb, &ratio)?.is_gt();
    let upper_holds = compare_ln(&xb, &(&alpha * &ratio))?.is_lt();
    let ln = ln_enclosure(&xb, 64).midpoint_f64();
    Ok(RsCheck {
        x,
        pi,
        lower_holds,
        upper_holds,
        lower_approx: x as f64 / ln,
        upper_approx: 1.25506 * x as f64 / ln,
    })
}

pub fn check_rs_inequality(x: u64, budget: super::SieveBudget) -> Result<RsCheck, PrimeError> {
    check_rs_inequality_with(&PrimeTable::new(x.max(2), budget)?, x)
}

/// One sampled `x` of the interval lemma. `None` marks a part not checked
/// at this `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalSample {
    pub x: u64,
    /// Primes in `(x, 2x)`.
    pub upper_count: Option<u64>,
    /// Primes in `(2x/3, x)`.
    pub lower_count: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalLemmaReport {
    pub n: u32,
    pub required: u64,
    pub samples: Vec<IntervalSample>,
    pub failures: Vec<u64>,
}

impl IntervalLemmaReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Counts primes in `(x, 2x)` (for `n >= 5`) and `(2x/3, x)` (for `n >= 7`)
/// and requires at least `n + 1` in each, for every `x >= 2^n`.
pub fn verify_interval_lemma_with(table: &PrimeTable, n: u32, xs: &[u64]) -> Result<IntervalLemmaReport, PrimeError> {
    if n < 5 {
        return Err(PrimeError::Precondition(format!("the lemma needs n >= 5, got {n}")));
    }
    let floor = 1u64
        .checked_shl(n)
        .filter(|_| n < 64)
        .ok_or_else(|| PrimeError::Precondition(format!("2^{n} does not fit in 64 bits")))?;
    let required = u64::from(n) + 1;
    let mut samples = Vec::with_capacity(xs.len());
    let mut failures = Vec::new();
    for &x in xs {
        if x < floor {
            return Err(PrimeError::Precondition(format!("x = {x} is below 2^{n}")));
        }
        let xr = ExactRational::from_integer(BigInt::from(x));
        let upper_count = table.count_open(&xr, &(&xr * BigInt::from(2)))?;
        let lower_count = if n >= 7 {
            Some(table.count_open(&(&xr * ExactRational::new(2.into(), 3.into())), &xr)?)
        } else {
            None
        };
        if upper_count < required || lower_count.is_some_and(|c| c < required) {
            failures.push(x);
        }
        samples.push(IntervalSample {
            x,
            upper_count: Some(upper_count),
            lower_count,
        });
    }
    Ok(IntervalLemmaReport {
        n,
        required,
        samples,
        failures,
    })
}

pub fn verify_interval_lemma(
    n: u32,
    xs: &[u64],
    budget: super::SieveBudget,
) -> Result<IntervalLemmaReport, PrimeError> {
    let top = xs.iter().max().copied().unwrap_or(2).saturating_mul(2);
    verify_interval_lemma_with(&PrimeTable::new(top, budget)?, n, xs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::SieveBudget;

    #[test]
    fn ln_enclosures_are_tight_and_correct() {
        for x in [1u64, 2, 3, 17, 100, 1_000_000, u64::MAX] {
            let e = ln_enclosure(&BigUint::from(x), 64);
            let scale = 2f64.powi(64);
            let (lo, hi) = (e.lo.to_f64().unwrap() / scale, e.hi.to_f64().unwrap() / scale);
            let exact = (x as f64).ln();
            assert!(lo <= exact + 1e-12 && exact <= hi + 1e-12, "x = {x}");
            assert!(hi - lo < 1e-15, "x = {x}");
        }
        let e = ln_enclosure(&BigUint::from(1u32), 64);
        assert!(e.lo.is_zero() && e.hi.is_zero());
    }

    #[test]
    fn rs_examples() {
        let b = SieveBudget::default();
        let c = check_rs_inequality(100, b).unwrap();
        assert!(c.holds());
        assert_eq!(c.pi, 25);
        assert!((c.lower_approx - 21.71).abs() < 0.01 && (c.upper_approx - 27.25).abs() < 0.01);
        let c = check_rs_inequality(17, b).unwrap();
        assert!(c.holds());
        assert_eq!(c.pi, 7);
        assert!(check_rs_inequality(100_000, b).unwrap().holds());
        assert!(check_rs_inequality(16, b).is_err());
    }

    #[test]
    fn rs_lower_bound_fails_below_validity() {
        // x = 10: 10 / ln 10 = 4.34 > π(10) = 4
        let table = PrimeTable::new(20, SieveBudget::default()).unwrap();
        let xb = BigUint::from(10u32);
        let ratio = ExactRational::new(BigInt::from(10), BigInt::from(table.pi(10).unwrap()));
        assert!(compare_ln(&xb, &ratio).unwrap().is_lt());
    }

    #[test]
    fn interval_examples() {
        let b = SieveBudget::default();
        let r = verify_interval_lemma(5, &[32], b).unwrap();
        assert!(r.holds());
        assert_eq!(r.samples[0].upper_count, Some(7));
        assert_eq!(r.samples[0].lower_count, None);
        let r = verify_interval_lemma(7, &[128], b).unwrap();
        assert_eq!(r.samples[0].lower_count, Some(8));
        assert!(r.holds());
        let r = verify_interval_lemma(8, &[256], b).unwrap();
        assert_eq!(r.samples[0].upper_count, Some(43));
        assert!(verify_interval_lemma(4, &[16], b).is_err());
        assert!(verify_interval_lemma(6, &[63], b).is_err());
    }
}
