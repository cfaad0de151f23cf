use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use wci::hodge::{count_monomials, h0n, SeriesBudget};
use wci::pairs::{classify, is_regular, normalize};
use wci::represent::{
    find_nonneg_representation, find_positive_representation, two_coin_representation, ResidueBudget,
};
use wci::{verify, Pair, SmallPair};

fn small_pair() -> impl Strategy<Value = SmallPair> {
    (
        prop::collection::vec(1u64..=30, 1..=3),
        prop::collection::vec(1u64..=12, 1..=7),
    )
        .prop_map(|(d, a)| SmallPair::new(d, a).unwrap())
}

fn big(pair: &SmallPair) -> Pair {
    pair.map(|&x| BigUint::from(x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn regularity_matches_subsets(pair in small_pair()) {
        prop_assert_eq!(is_regular(&pair).0, verify::regular_by_subsets(&pair));
        prop_assert_eq!(is_regular(&big(&pair)).0, is_regular(&pair).0);
    }

    #[test]
    fn regularity_witness_fails(pair in small_pair()) {
        if let (false, Some(w)) = is_regular(&pair) {
            let degrees = pair.degrees().iter().filter(|d| *d % w.divisor == 0).count();
            let weights = pair.weights().iter().filter(|a| *a % w.divisor == 0).count();
            prop_assert!(degrees < weights);
        }
    }

    #[test]
    fn representability_is_monotone(weights in prop::collection::vec(1u64..=15, 1..=4), m in 0u64..150) {
        let b = ResidueBudget::default();
        if find_nonneg_representation(&m, &weights, b).unwrap().is_some() {
            for a in &weights {
                prop_assert!(find_nonneg_representation(&(m + a), &weights, b).unwrap().is_some());
            }
        }
    }

    #[test]
    fn oracle_matches_table(weights in prop::collection::vec(1u64..=15, 1..=4), m in 0u64..150) {
        let table = verify::representable_table(m, &weights);
        let found = find_nonneg_representation(&m, &weights, ResidueBudget::default()).unwrap();
        prop_assert_eq!(found.is_some(), table[m as usize]);
        if let Some(rep) = found {
            prop_assert!(rep.verify());
        }
    }

    #[test]
    fn positive_oracle_matches_table(pair in small_pair()) {
        let found = find_positive_representation(&pair, ResidueBudget::default()).unwrap();
        prop_assert_eq!(found.is_some(), verify::positive_representable(&pair));
    }

    #[test]
    fn classification_ignores_order(pair in small_pair(), seed in any::<u64>()) {
        let mut d = pair.degrees().to_vec();
        let mut a = pair.weights().to_vec();
        d.reverse();
        let shift = (seed as usize) % a.len();
        a.rotate_left(shift);
        let shuffled = SmallPair::new(d, a).unwrap();
        prop_assert_eq!(classify(&shuffled), classify(&pair));
        prop_assert_eq!(is_regular(&shuffled).0, is_regular(&pair).0);
    }

    #[test]
    fn normalize_keeps_index_and_regularity(pair in small_pair()) {
        let reduced = normalize(&pair);
        prop_assert_eq!(reduced.index(), pair.index());
        prop_assert_eq!(is_regular(&reduced).0, is_regular(&pair).0);
    }

    #[test]
    fn monomial_counts_match_recursion(weights in prop::collection::vec(1u64..=6, 1..=4), m in 0u64..40) {
        let series = count_monomials(&weights, &BigInt::from(m), SeriesBudget::default()).unwrap();
        prop_assert_eq!(series, BigUint::from(verify::count_monomials(&weights, m)));
    }

    #[test]
    fn h0n_is_nonnegative_on_regular_pairs(pair in small_pair()) {
        if is_regular(&pair).0 && pair.ambient_dimension() > pair.codimension() {
            prop_assert!(h0n(&pair, SeriesBudget::default()).is_ok());
        }
    }

    #[test]
    fn two_coins_cover_everything_above_frobenius(a in 2u64..=40, b in 2u64..=40, extra in 1u64..200) {
        prop_assume!(num_integer::gcd(a, b) == 1);
        let m = a * b - a - b + extra;
        let (x, y) = two_coin_representation(&m, &a, &b).unwrap().expect("representable");
        prop_assert_eq!(x * a + y * b, m);
    }
}
