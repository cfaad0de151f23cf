use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::PrimeError;
use crate::ExactRational;

/// Largest sieve limit any operation will allocate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveBudget {
    pub max_limit: u64,
}

impl Default for SieveBudget {
    fn default() -> Self {
        Self { max_limit: 1 << 28 }
    }
}

fn check_budget(limit: u64, budget: SieveBudget) -> Result<(), PrimeError> {
    if limit > budget.max_limit {
        return Err(PrimeError::Budget {
            limit,
            budget: budget.max_limit,
        });
    }
    Ok(())
}

/// Primes `<= limit`, ascending.
pub fn sieve(limit: u64, budget: SieveBudget) -> Result<Vec<u64>, PrimeError> {
    check_budget(limit, budget)?;
    if limit < 2 {
        return Ok(Vec::new());
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    Ok(primes)
}

/// A sieve kept around for repeated counting queries.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn new(limit: u64, budget: SieveBudget) -> Result<Self, PrimeError> {
        Ok(Self {
            limit,
            primes: sieve(limit, budget)?,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `π(x)`; `x` must not exceed the table limit.
    pub fn pi(&self, x: u64) -> Result<u64, PrimeError> {
        if x > self.limit {
            return Err(PrimeError::Precondition(format!(
                "π({x}) asked of a table built up to {}",
                self.limit
            )));
        }
        Ok(self.primes.partition_point(|&p| p <= x) as u64)
    }

    /// Number of primes strictly between two rationals.
    pub fn count_open(&self, lo: &ExactRational, hi: &ExactRational) -> Result<u64, PrimeError> {
        let Some((first, last)) = integer_range(lo, hi) else {
            return Ok(0);
        };
        if last > self.limit {
            return Err(PrimeError::Precondition(format!(
                "interval reaches {last}, beyond the table limit {}",
                self.limit
            )));
        }
        let below_last = self.primes.partition_point(|&p| p <= last);
        let below_first = self.primes.partition_point(|&p| p < first);
        Ok(below_last.saturating_sub(below_first) as u64)
    }
}

/// The integers strictly inside `(lo, hi)` as `first..=last`, or `None`.
fn integer_range(lo: &ExactRational, hi: &ExactRational) -> Option<(u64, u64)> {
    let first: BigInt = lo.floor().to_integer() + 1;
    let last: BigInt = hi.ceil().to_integer() - 1;
    if last < first || last.is_negative() {
        return None;
    }
    let first = first.max(BigInt::from(0)).to_u64()?;
    let last = last.to_u64().unwrap_or(u64::MAX);
    Some((first, last))
}

pub fn prime_pi(x: u64, budget: SieveBudget) -> Result<u64, PrimeError> {
    PrimeTable::new(x, budget)?.pi(x)
}

/// `#{p prime : lo < p < hi}` with exact rational endpoints.
pub fn primes_in_open_interval(lo: &ExactRational, hi: &ExactRational, budget: SieveBudget) -> Result<u64, PrimeError> {
    if !lo.is_positive() || lo >= hi {
        return Err(PrimeError::Precondition(format!("need 0 < lo < hi, got ({lo}, {hi})")));
    }
    let Some((_, last)) = integer_range(lo, hi) else {
        return Ok(0);
    };
    PrimeTable::new(last, budget)?.count_open(lo, hi)
}

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers (the first twelve prime
/// bases suffice below 3.3 * 10^24).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in SMALL_PRIMES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    SMALL_PRIMES.iter().all(|&a| {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            return true;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                return true;
            }
        }
        false
    })
}

fn strong_probable_prime(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::from(1u32);
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;
    let mut x = base.modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    while a != BigInt::from(0) {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&BigInt::from(4)) == three && n.mod_floor(&BigInt::from(4)) == three {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n == BigInt::from(1) {
        result
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge parameters.
fn strong_lucas(n: &BigUint) -> bool {
    let nn = BigInt::from(n.clone());
    let root = n.sqrt();
    if &root * &root == *n {
        return false;
    }
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, &nn) {
            -1 => break,
            0 if d.abs() != nn => return false,
            _ => {}
        }
        d = if d.is_positive() { -(d + 2u32) } else { -(d - 2u32) };
    }
    let p = BigInt::from(1);
    let q: BigInt = (BigInt::from(1) - &d) / 4;
    let reduce = |v: BigInt| v.mod_floor(&nn);
    let half = |v: BigInt| {
        let v = if v.is_odd() { v + &nn } else { v };
        reduce(v >> 1)
    };
    let n_plus_1 = &nn + 1u32;
    let s = n_plus_1.trailing_zeros().expect("n + 1 > 0");
    let k = &n_plus_1 >> s;
    let (mut u, mut v, mut qk) = (BigInt::from(1), p.clone(), reduce(q.clone()));
    for bit in (0..k.bits() - 1).rev() {
        u = reduce(&u * &v);
        v = reduce(&v * &v - &qk * 2u32);
        qk = reduce(&qk * &qk);
        if k.bit(bit) {
            let next_u = half(&p * &u + &v);
            let next_v = half(&d * &u + &p * &v);
            u = next_u;
            v = next_v;
            qk = reduce(&qk * &q);
        }
    }
    if u == BigInt::from(0) || v == BigInt::from(0) {
        return true;
    }
    for _ in 1..s {
        v = reduce(&v * &v - &qk * 2u32);
        if v == BigInt::from(0) {
            return true;
        }
        qk = reduce(&qk * &qk);
    }
    false
}

/// Primality of an arbitrary-size integer: exact below 2^64, Miller–Rabin
/// with the first twelve prime bases below 3.3 * 10^24 (deterministic
/// there), Baillie–PSW above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for p in SMALL_PRIMES
        .iter()
        .chain(&[41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97])
    {
        if (n % p).to_u64() == Some(0) {
            return false;
        }
    }
    let deterministic_bound: BigUint = "3317044064679887385961981".parse().expect("literal");
    if *n < deterministic_bound {
        return SMALL_PRIMES
            .iter()
            .all(|&a| strong_probable_prime(n, &BigUint::from(a)));
    }
    strong_probable_prime(n, &BigUint::from(2u32)) && strong_lucas(n)
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: &BigUint) -> BigUint {
    let mut candidate = n + 1u32;
    if candidate <= BigUint::from(2u32) {
        return BigUint::from(2u32);
    }
    if candidate.is_even() {
        candidate += 1u32;
    }
    while !is_prime(&candidate) {
        candidate += 2u32;
    }
    candidate
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    const B: SieveBudget = SieveBudget { max_limit: 1 << 24 };

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sieve_examples() {
        assert_eq!(sieve(10, B).unwrap(), vec![2, 3, 5, 7]);
        assert_eq!(sieve(30, B).unwrap(), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(sieve(2, B).unwrap(), vec![2]);
        assert!(sieve(1, B).unwrap().is_empty());
        assert!(matches!(sieve(1 << 25, B), Err(PrimeError::Budget { .. })));
    }

    #[test]
    fn pi_examples() {
        assert_eq!(prime_pi(100, B).unwrap(), 25);
        assert_eq!(prime_pi(2, B).unwrap(), 1);
        assert_eq!(prime_pi(1, B).unwrap(), 0);
        assert_eq!(prime_pi(0, B).unwrap(), 0);
        assert_eq!(prime_pi(1_000_000, B).unwrap(), 78_498);
    }

    #[test]
    fn open_interval_examples() {
        assert_eq!(primes_in_open_interval(&q(32, 1), &q(64, 1), B).unwrap(), 7);
        assert_eq!(primes_in_open_interval(&q(256, 3), &q(128, 1), B).unwrap(), 8);
        assert_eq!(primes_in_open_interval(&q(2, 1), &q(3, 1), B).unwrap(), 0);
        assert_eq!(primes_in_open_interval(&q(5, 2), &q(7, 2), B).unwrap(), 1);
        assert_eq!(primes_in_open_interval(&q(1, 2), &q(2, 1), B).unwrap(), 0);
        assert!(primes_in_open_interval(&q(3, 1), &q(2, 1), B).is_err());
    }

    #[test]
    fn primality_agrees_with_sieve() {
        let primes = sieve(100_000, B).unwrap();
        let from_test: Vec<u64> = (0..=100_000).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, from_test);
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn big_primality() {
        let m127 = (BigUint::from(1u32) << 127) - 1u32;
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m127 + 2u32)));
        let m89 = (BigUint::from(1u32) << 89) - 1u32;
        assert!(is_prime(&m89));
        assert!(!is_prime(&(&m89 * &m127)));
        // product of two primes above the deterministic bound
        let p = next_prime(&(BigUint::from(10u32).pow(30)));
        let r = next_prime(&p);
        assert!(is_prime(&p) && is_prime(&r));
        assert!(!is_prime(&(&p * &r)));
        assert_eq!(next_prime(&BigUint::from(1806u32)), BigUint::from(1811u32));
        assert_eq!(next_prime(&BigUint::from(0u32)), BigUint::from(2u32));
        assert_eq!(next_prime(&BigUint::from(2u32)), BigUint::from(3u32));
    }

    #[test]
    fn lucas_agrees_on_small_odd_numbers() {
        for n in (5u64..20_000).step_by(2) {
            let big = BigUint::from(n);
            if is_prime_u64(n) {
                assert!(strong_lucas(&big), "{n}");
            }
        }
        // 5459, 5777 and 10877 are strong Lucas pseudoprimes
        assert!(strong_lucas(&BigUint::from(5459u32)));
        assert!(!is_prime_u64(5459));
    }
}
