//! Cartier pairs of general type, not regular, with `h^{0,n} = 0`, built
//! from a straddle chain of primes.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use super::Check;
use crate::error::ConstructError;
use crate::hodge::{h0n, SeriesBudget};
use crate::json;
use crate::pairs::{classify, is_cartier, is_regular, is_space_well_formed, ClassKind};
use crate::primes::{straddle_chain, PrimeChain};
use crate::represent::{find_nonneg_representation, ResidueBudget};
use crate::{ExactRational, Pair};

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub n: usize,
    pub m: usize,
    #[serde(serialize_with = "json::decimal_vec::serialize")]
    pub chain: Vec<BigUint>,
    #[serde(serialize_with = "json::rational::serialize")]
    pub chain_partial_sum: ExactRational,
    pub pair: Pair,
    #[serde(serialize_with = "json::decimal::serialize")]
    pub index: BigInt,
    pub checks: Vec<Check>,
    /// Geometric properties that are not decided here.
    pub unchecked: Vec<String>,
}

impl CounterexampleReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// `m = n/2` for even `n`, `(n+1)/2` for odd `n`; chain `p_0..p_{m+1}`;
/// weights `a_s = Π_{j<=m, j!=s} p_j`, each twice; degree `2P` for even `n`,
/// `(P, P)` for odd `n`, where `P = Π_{j<=m} p_j`.
pub fn build_counterexample(n: usize) -> Result<CounterexampleReport, ConstructError> {
    if n <= 2 {
        return Err(ConstructError::Precondition(format!(
            "the construction needs n > 2, got {n}"
        )));
    }
    let m = n.div_ceil(2);
    let chain: PrimeChain = straddle_chain(m)?;
    let used = &chain.primes[..=m];
    let product: BigUint = used.iter().product();
    let mut weights = Vec::with_capacity(2 * (m + 1));
    for p in used {
        let a = &product / p;
        weights.push(a.clone());
        weights.push(a);
    }
    let degrees = if n.is_multiple_of(2) {
        vec![&product * 2u32]
    } else {
        vec![product.clone(), product.clone()]
    };
    let pair = Pair::new(degrees, weights)?;
    if pair.dimension() != n as i64 {
        return Err(ConstructError::Precondition(format!(
            "built {pair} of dimension {}, expected {n}",
            pair.dimension()
        )));
    }

    let class = classify(&pair);
    let index = class.index.clone();
    let mut checks = Vec::new();

    // 2P (1 - Σ 1/p_j), independently of the integer subtraction
    let from_chain =
        ExactRational::from_integer(BigInt::from(&product * 2u32)) * (ExactRational::one() - &chain.partial_sum);
    checks.push(Check::new(
        "index_identity",
        from_chain == ExactRational::from_integer(index.clone()),
        format!(
            "Σd - Σa = {index}, 2P(1 - Σ1/p) = {}",
            json::rational_to_string(&from_chain)
        ),
    ));
    checks.push(Check::new(
        "general_type",
        class.kind == ClassKind::GeneralType,
        format!("index {index}"),
    ));
    let (cartier, witness) = is_cartier(&pair);
    checks.push(Check::new(
        "cartier",
        cartier,
        witness.map_or("every weight divides every degree".into(), |w| {
            format!("{} does not divide {}", w.weight, w.degree)
        }),
    ));
    let well_formed = is_space_well_formed(pair.weights())?;
    checks.push(Check::new(
        "ambient_well_formed",
        well_formed,
        "gcd of any N of the weights is 1".into(),
    ));

    let h = h0n(&pair, SeriesBudget::default())?;
    checks.push(Check::new("h0n_zero", h.is_zero(), format!("h0n = {h}")));

    let index_u = index.to_biguint();
    let min_weight = pair.weights()[0].clone();
    let equal = index_u
        .as_ref()
        .and_then(|i| pair.weights().iter().position(|a| a == i));
    checks.push(Check::new(
        "no_linear_monomial",
        index_u.is_some() && equal.is_none(),
        match equal {
            Some(l) => format!("index equals weight a_{l}"),
            None => format!("index {index} differs from every weight"),
        },
    ));
    // i - a_s - a_t < 0 for all s, t: enough to test the two smallest
    let deficit = &index - BigInt::from(&min_weight * 2u32);
    checks.push(Check::new(
        "quadratic_deficit",
        deficit < BigInt::zero(),
        format!("max over s,t of i - a_s - a_t = {deficit}"),
    ));
    let no_monomial = match &index_u {
        Some(i) => find_nonneg_representation(i, pair.weights(), ResidueBudget::default())?.is_none(),
        None => false,
    };
    checks.push(Check::new(
        "no_monomial_of_index_degree",
        no_monomial,
        "residue oracle finds no monomial of degree i".into(),
    ));
    let (regular, witness) = is_regular(&pair);
    checks.push(Check::new(
        "not_regular",
        !regular,
        witness.map_or("regular".into(), |w| {
            format!(
                "{} weights but {} degrees divisible by {}",
                w.weight_indices.len(),
                w.degree_count,
                w.divisor
            )
        }),
    ));

    Ok(CounterexampleReport {
        n,
        m,
        chain: chain.primes.clone(),
        chain_partial_sum: chain.partial_sum.clone(),
        pair,
        index,
        checks,
        unchecked: vec![
            "quasi-smoothness of the variety".into(),
            "well-formedness of the variety".into(),
        ],
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
    fn dimension_four() {
        let r = build_counterexample(4).unwrap();
        assert_eq!(r.pair, pair(&[84], &[6, 6, 14, 14, 21, 21]));
        assert_eq!(r.index, BigInt::from(2));
        assert_eq!(r.chain, [2u32, 3, 7, 11].map(BigUint::from));
        assert!(r.all_checks_pass(), "{:?}", r.checks);
    }

    #[test]
    fn dimension_three() {
        let r = build_counterexample(3).unwrap();
        assert_eq!(r.pair, pair(&[42, 42], &[6, 6, 14, 14, 21, 21]));
        assert_eq!(r.index, BigInt::from(2));
        assert!(r.all_checks_pass(), "{:?}", r.checks);
    }

    #[test]
    fn dimension_six() {
        let r = build_counterexample(6).unwrap();
        assert_eq!(r.pair, pair(&[3612], &[42, 42, 258, 258, 602, 602, 903, 903]));
        assert_eq!(r.index, BigInt::from(2));
        assert!(r.all_checks_pass());
    }

    #[test]
    fn small_dimensions_rejected() {
        assert!(build_counterexample(2).is_err());
    }
}
