//! Pairs `((P^N), (P/p_0, ..., P/p_N))` for the first `N + 1` primes: regular
//! Cartier pairs of general type with `N = k` and no positive
//! representation.

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use super::Check;
use crate::error::ConstructError;
use crate::json;
use crate::pairs::{classify, is_cartier, is_regular, ClassKind};
use crate::primes::next_prime;
use crate::represent::{find_positive_representation, ResidueBudget};
use crate::Pair;

#[derive(Clone, Debug, Serialize)]
pub struct PointFamilyReport {
    #[serde(rename = "N")]
    pub big_n: usize,
    #[serde(serialize_with = "json::decimal_vec::serialize")]
    pub primes: Vec<BigUint>,
    pub pair: Pair,
    #[serde(serialize_with = "json::decimal::serialize")]
    pub index: BigInt,
    pub checks: Vec<Check>,
}

impl PointFamilyReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

pub fn build_point_family(big_n: usize, budget: ResidueBudget) -> Result<PointFamilyReport, ConstructError> {
    if big_n < 1 {
        return Err(ConstructError::Precondition("the family needs N >= 1".into()));
    }
    let mut primes = Vec::with_capacity(big_n + 1);
    let mut p = BigUint::from(1u32);
    for _ in 0..=big_n {
        p = next_prime(&p);
        primes.push(p.clone());
    }
    let product: BigUint = primes.iter().product();
    let weights = primes.iter().map(|p| &product / p).collect();
    let pair = Pair::new(vec![product; big_n], weights)?;
    let class = classify(&pair);

    let mut checks = Vec::new();
    let (regular, _) = is_regular(&pair);
    checks.push(Check::new("regular", regular, String::new()));
    checks.push(Check::new("cartier", is_cartier(&pair).0, String::new()));
    checks.push(Check::new(
        "general_type",
        class.kind == ClassKind::GeneralType,
        format!("index {}", class.index),
    ));
    let rep = find_positive_representation(&pair, budget)?;
    checks.push(Check::new(
        "no_positive_representation",
        rep.is_none(),
        rep.map_or(String::new(), |r| format!("found {:?}", r.coefficients)),
    ));
    checks.push(Check::new(
        "ambient_equals_codimension",
        pair.ambient_dimension() == pair.codimension(),
        format!("N = {}, k = {}", pair.ambient_dimension(), pair.codimension()),
    ));
    Ok(PointFamilyReport {
        big_n,
        primes,
        pair,
        index: class.index,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(d: &[u64], a: &[u64]) -> Pair {
        Pair::new(
            d.iter().map(|&x| x.into()).collect(),
            a.iter().map(|&x| x.into()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn examples() {
        let b = ResidueBudget::default();
        let r = build_point_family(1, b).unwrap();
        assert_eq!(r.pair, pair(&[6], &[3, 2]));
        assert!(r.all_checks_pass());
        let r = build_point_family(2, b).unwrap();
        assert_eq!(r.pair, pair(&[30, 30], &[15, 10, 6]));
        assert!(r.all_checks_pass());
        let r = build_point_family(3, b).unwrap();
        assert_eq!(r.pair, pair(&[210, 210, 210], &[105, 70, 42, 30]));
        assert!(r.all_checks_pass());
        assert!(build_point_family(0, b).is_err());
    }
}
