//! Brute-force oracles, independent of the fast paths they cross-check.
//! All of them enumerate directly and are only meant for small inputs.

use num_integer::Integer;

use crate::pairs::WeightedPair;

/// Regularity by the subset formulation: for every nonempty set of weights
/// with gcd `δ > 1`, at least that many degrees are divisible by `δ`.
pub fn regular_by_subsets(pair: &WeightedPair<u64>) -> bool {
    let weights = pair.weights();
    assert!(weights.len() <= 20, "subset enumeration is exponential");
    (1u32..1 << weights.len()).all(|mask| {
        let chosen = (0..weights.len()).filter(|&l| mask & (1 << l) != 0);
        let size = chosen.clone().count();
        let g = chosen.fold(0u64, |g, l| g.gcd(&weights[l]));
        g == 1 || pair.degrees().iter().filter(|d| *d % g == 0).count() >= size
    })
}

/// Which values `0..=limit` are nonnegative combinations of `weights`.
pub fn representable_table(limit: u64, weights: &[u64]) -> Vec<bool> {
    let mut table = vec![false; limit as usize + 1];
    table[0] = true;
    for v in 1..=limit as usize {
        table[v] = weights.iter().any(|&w| w as usize <= v && table[v - w as usize]);
    }
    table
}

/// Positive `β` with `Σd = Σ β_l a_l` exists, by a value table.
pub fn positive_representable(pair: &WeightedPair<u64>) -> bool {
    let total: u64 = pair.degrees().iter().sum();
    let floor: u64 = pair.weights().iter().sum();
    total >= floor && representable_table(total - floor, pair.weights())[(total - floor) as usize]
}

/// Number of `α >= 0` with `Σ α_l w_l = m`, by recursion over the weights.
pub fn count_monomials(weights: &[u64], m: u64) -> u64 {
    match weights.split_first() {
        None => u64::from(m == 0),
        Some((&w, rest)) => (0..=m / w).map(|e| count_monomials(rest, m - e * w)).sum(),
    }
}

/// Primitive middle Hodge numbers of the Fermat hypersurface
/// `Σ x_l^{d/a_l} = 0`, read off its Milnor monomial basis: exponents
/// `0 <= e_l <= d/a_l - 2`, with `Σ (e_l + 1) a_l = (q + 1) d` landing in
/// entry `q`.
pub fn fermat_milnor_hodge(degree: u64, weights: &[u64]) -> Vec<u64> {
    assert!(
        weights.iter().all(|a| degree.is_multiple_of(*a)),
        "the Fermat model needs a | d"
    );
    let n = weights.len().saturating_sub(1);
    let mut entries = vec![0u64; n];
    let caps: Vec<u64> = weights.iter().map(|a| degree / a).collect();
    let mut exps = vec![0u64; weights.len()];
    if caps.iter().any(|&c| c < 2) {
        return entries;
    }
    loop {
        let weight: u64 = exps.iter().zip(weights).map(|(e, a)| (e + 1) * a).sum();
        if weight.is_multiple_of(degree) {
            let q = (weight / degree) as usize - 1;
            if q < n {
                entries[q] += 1;
            }
        }
        // odometer over e_l in 0..=caps[l] - 2
        let mut l = 0;
        loop {
            if l == weights.len() {
                return entries;
            }
            if exps[l] + 2 < caps[l] {
                exps[l] += 1;
                break;
            }
            exps[l] = 0;
            l += 1;
        }
    }
}

/// Largest integer that is not a nonnegative combination of `a` and `b`,
/// found by scanning up to `ab`.
pub fn frobenius_number(a: u64, b: u64) -> Option<u64> {
    let limit = a * b;
    let table = representable_table(limit, &[a, b]);
    (0..=limit).rev().find(|&v| !table[v as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quintic_milnor_basis() {
        assert_eq!(fermat_milnor_hodge(5, &[1, 1, 1, 1, 1]), vec![1, 101, 101, 1]);
        assert_eq!(fermat_milnor_hodge(4, &[1, 1, 1, 1]), vec![1, 19, 1]);
    }

    #[test]
    fn small_oracles() {
        assert_eq!(frobenius_number(3, 5), Some(7));
        assert_eq!(count_monomials(&[1, 1, 1, 1], 2), 10);
        assert!(!positive_representable(
            &WeightedPair::new(vec![6], vec![3, 2]).unwrap()
        ));
        assert!(regular_by_subsets(
            &WeightedPair::new(vec![6, 6], vec![2, 2, 3, 3]).unwrap()
        ));
        assert!(!regular_by_subsets(
            &WeightedPair::new(vec![84], vec![6, 6, 14, 14, 21, 21]).unwrap()
        ));
    }
}
