//! Reciprocal sums of distinct primes: straddle chains and `δ(n)`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::sieve::next_prime;
use crate::error::PrimeError;
use crate::ExactRational;

fn reciprocal(p: &BigUint) -> ExactRational {
    ExactRational::new(BigInt::one(), BigInt::from(p.clone()))
}

fn reciprocal_sum(primes: &[BigUint]) -> ExactRational {
    primes.iter().fold(ExactRational::zero(), |acc, p| acc + reciprocal(p))
}

/// Smallest prime `p > floor` with `1/p < gap`, i.e. `p > max(floor, 1/gap)`.
fn smallest_prime_below_gap(floor: &BigUint, gap: &ExactRational) -> BigUint {
    let inverse = gap.recip().floor().to_integer();
    let bound = inverse.to_biguint().unwrap_or_default().max(floor.clone());
    next_prime(&bound)
}

/// Primes `p_0 < ... < p_{m+1}` whose first `m + 1` reciprocals sum to
/// less than 1 and all `m + 2` to more than 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeChain {
    pub primes: Vec<BigUint>,
    /// `Σ_{j <= m} 1/p_j`.
    pub partial_sum: ExactRational,
}

impl PrimeChain {
    pub fn m(&self) -> usize {
        self.primes.len() - 2
    }

    pub fn last(&self) -> &BigUint {
        self.primes.last().expect("chains have at least three primes")
    }

    /// Re-checks every invariant with exact arithmetic.
    pub fn verify(&self) -> bool {
        let n = self.primes.len();
        n >= 3
            && self.primes.windows(2).all(|w| w[0] < w[1])
            && self.primes.iter().all(super::is_prime)
            && self.partial_sum == reciprocal_sum(&self.primes[..n - 1])
            && self.partial_sum < ExactRational::one()
            && &self.partial_sum + reciprocal(self.last()) > ExactRational::one()
    }
}

/// Greedy chain: `p_0 = 2`, each next prime the smallest that keeps the sum
/// below 1, for `m + 1` primes; then the next prime after `p_m`, which must
/// push the sum above 1.
pub fn straddle_chain(m: usize) -> Result<PrimeChain, PrimeError> {
    if m < 1 {
        return Err(PrimeError::Precondition("a straddle chain needs m >= 1".into()));
    }
    let mut primes: Vec<BigUint> = Vec::with_capacity(m + 2);
    let mut sum = ExactRational::zero();
    for _ in 0..=m {
        let floor = primes.last().cloned().unwrap_or_default();
        let p = smallest_prime_below_gap(&floor, &(ExactRational::one() - &sum));
        sum += reciprocal(&p);
        primes.push(p);
    }
    let last = next_prime(primes.last().expect("m + 1 >= 2 primes"));
    if &sum + reciprocal(&last) <= ExactRational::one() {
        return Err(PrimeError::Invariant(format!(
            "no prime after {} pushes the sum {sum} above 1",
            primes[m]
        )));
    }
    primes.push(last);
    let chain = PrimeChain {
        primes,
        partial_sum: sum,
    };
    if !chain.verify() {
        return Err(PrimeError::Invariant(format!(
            "chain {:?} failed verification",
            chain.primes
        )));
    }
    Ok(chain)
}

/// `1 - Σ 1/p_i` for a set of distinct primes, with the primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaWitness {
    pub value: ExactRational,
    pub primes: Vec<BigUint>,
}

impl DeltaWitness {
    pub fn verify(&self) -> bool {
        self.primes.windows(2).all(|w| w[0] < w[1])
            && self.primes.iter().all(super::is_prime)
            && self.value == ExactRational::one() - reciprocal_sum(&self.primes)
            && self.value.is_positive()
    }
}

/// Greedy completion: from `primes` (with gap `gap`), add `r` more primes,
/// each the smallest keeping the gap positive.
fn greedy_completion(primes: &[BigUint], gap: &ExactRational, r: usize) -> DeltaWitness {
    let mut out = primes.to_vec();
    let mut gap = gap.clone();
    for _ in 0..r {
        let floor = out.last().cloned().unwrap_or_default();
        let p = smallest_prime_below_gap(&floor, &gap);
        gap -= reciprocal(&p);
        out.push(p);
    }
    DeltaWitness {
        value: gap,
        primes: out,
    }
}

struct Search {
    n: usize,
    nodes: u64,
    budget: u64,
    best: DeltaWitness,
}

impl Search {
    fn visit(&mut self, chosen: &mut Vec<BigUint>, gap: &ExactRational) -> Result<(), PrimeError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(PrimeError::BudgetExceeded(self.budget));
        }
        let r = self.n - chosen.len();
        if r == 0 {
            if gap < &self.best.value {
                self.best = DeltaWitness {
                    value: gap.clone(),
                    primes: chosen.clone(),
                };
            }
            return Ok(());
        }
        let floor = chosen.last().cloned().unwrap_or_default();
        if gap <= &self.best.value {
            // every completion lands below the current best; the greedy one
            // makes the upper bound below meaningful
            let candidate = greedy_completion(chosen, gap, r);
            if candidate.value < self.best.value {
                self.best = candidate;
            }
        }
        // the smallest admissible prime, then every prime p with
        // gap - r/p < best, i.e. p < r / (gap - best)
        let mut p = smallest_prime_below_gap(&floor, gap);
        loop {
            let limit = ExactRational::from_integer(BigInt::from(r as u64)) / (gap - &self.best.value);
            if ExactRational::from_integer(BigInt::from(p.clone())) >= limit {
                break;
            }
            let next_gap = gap - reciprocal(&p);
            chosen.push(p.clone());
            self.visit(chosen, &next_gap)?;
            chosen.pop();
            if r == 1 {
                // later primes leave a larger gap
                break;
            }
            p = next_prime(&p);
        }
        Ok(())
    }
}

/// Minimum of `1 - Σ 1/p_i > 0` over `n` distinct primes, by exact
/// branch-and-bound from the greedy value. Counts visited nodes against
/// `node_budget`.
pub fn delta(n: usize, node_budget: u64) -> Result<DeltaWitness, PrimeError> {
    if n < 1 {
        return Err(PrimeError::Precondition("δ(n) needs n >= 1".into()));
    }
    let mut search = Search {
        n,
        nodes: 0,
        budget: node_budget,
        best: greedy_completion(&[], &ExactRational::one(), n),
    };
    search.visit(&mut Vec::with_capacity(n), &ExactRational::one())?;
    let best = search.best;
    if !best.verify() {
        return Err(PrimeError::Invariant(format!(
            "δ witness {:?} failed verification",
            best.primes
        )));
    }
    Ok(best)
}

/// Witness of `δ(n) <= 1/2^n` for `n >= 5`: the exact `δ(4)` witness
/// extended one prime at a time by the smallest prime above `1/gap`.
pub fn delta_upper_bound(n: usize) -> Result<DeltaWitness, PrimeError> {
    if n < 5 {
        return Err(PrimeError::Precondition(format!(
            "the upper-bound witness needs n >= 5, got {n}"
        )));
    }
    let base: Vec<BigUint> = [2u32, 3, 7, 43].into_iter().map(BigUint::from).collect();
    let gap = ExactRational::one() - reciprocal_sum(&base);
    let witness = greedy_completion(&base, &gap, n - base.len());
    let bound = ExactRational::new(BigInt::one(), BigInt::one() << n);
    if !witness.verify() || witness.value > bound {
        return Err(PrimeError::Invariant(format!(
            "extension {:?} does not certify δ({n}) <= 1/2^{n}",
            witness.primes
        )));
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nums(v: &[BigUint]) -> Vec<u64> {
        v.iter().map(|p| u64::try_from(p).unwrap()).collect()
    }

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn straddle_examples() {
        let c = straddle_chain(2).unwrap();
        assert_eq!(nums(&c.primes), vec![2, 3, 7, 11]);
        assert_eq!(c.partial_sum, q(41, 42));
        let c = straddle_chain(3).unwrap();
        assert_eq!(nums(&c.primes), vec![2, 3, 7, 43, 47]);
        assert_eq!(c.partial_sum, q(1805, 1806));
        let c = straddle_chain(1).unwrap();
        assert_eq!(nums(&c.primes), vec![2, 3, 5]);
        assert_eq!(c.partial_sum, q(5, 6));
        assert!(straddle_chain(0).is_err());
        for m in 1..=8 {
            assert!(straddle_chain(m).unwrap().verify(), "m = {m}");
        }
    }

    #[test]
    fn delta_small() {
        let expected = [
            (1, q(1, 2), vec![2]),
            (2, q(1, 6), vec![2, 3]),
            (3, q(1, 42), vec![2, 3, 7]),
        ];
        for (n, value, primes) in expected {
            let w = delta(n, 1_000_000).unwrap();
            assert_eq!(w.value, value);
            assert_eq!(nums(&w.primes), primes);
        }
        let w = delta(4, 10_000_000).unwrap();
        assert_eq!(w.value, q(1, 1806));
        assert_eq!(nums(&w.primes), vec![2, 3, 7, 43]);
        assert!(matches!(delta(4, 3), Err(PrimeError::BudgetExceeded(3))));
    }

    #[test]
    fn delta_three_matches_exhaustive_search() {
        let primes: Vec<i64> = vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
        let mut best: Option<ExactRational> = None;
        for (i, &a) in primes.iter().enumerate() {
            for (j, &b) in primes.iter().enumerate().skip(i + 1) {
                for &c in &primes[j + 1..] {
                    let v = ExactRational::one() - q(1, a) - q(1, b) - q(1, c);
                    if v.is_positive() && best.as_ref().is_none_or(|x| &v < x) {
                        best = Some(v);
                    }
                }
            }
        }
        assert_eq!(best.unwrap(), delta(3, 1_000_000).unwrap().value);
    }

    #[test]
    fn upper_bound_examples() {
        let w = delta_upper_bound(5).unwrap();
        assert_eq!(nums(&w.primes), vec![2, 3, 7, 43, 1811]);
        assert_eq!(w.value, q(5, 3_270_666));
        for n in 6..=9 {
            let w = delta_upper_bound(n).unwrap();
            assert!(w.value <= ExactRational::new(BigInt::one(), BigInt::one() << n));
            assert_eq!(w.primes.len(), n);
        }
        assert!(delta_upper_bound(4).is_err());
    }
}
