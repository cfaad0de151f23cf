//! Nonnegative and positive integer representations of a target by the
//! weights.
//!
//! `find_nonneg_representation` is the general oracle. The constructive
//! builders in [`cartier`] and [`codim2`] never search the full target; they
//! follow an explicit case analysis and are checked against the oracle by the
//! scan in [`crate::construct`].

mod cartier;
mod codim2;
mod coins;
mod residue;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use cartier::constructive_representation_cartier;
pub use codim2::representation_codim_le2;
pub use coins::{sylvester_frobenius, two_coin_representation};

use crate::error::{PairError, RepresentError};
use crate::pairs::WeightedPair;
use crate::scalar::{self, Weight};
use residue::SuffixTables;

/// Memory limit for the residue tables, in table entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueBudget {
    pub max_residues: u64,
}

impl Default for ResidueBudget {
    fn default() -> Self {
        Self { max_residues: 1 << 24 }
    }
}

/// Certificate that `Σ coefficients[l] * weights[l] = target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation<T> {
    pub coefficients: Vec<T>,
    pub target: T,
    pub weights: Vec<T>,
    /// Every coefficient is at least 1.
    pub positive: bool,
}

impl<T: Weight> Representation<T> {
    /// Substitutes the coefficients back into the defining equation.
    pub fn verify(&self) -> bool {
        self.coefficients.len() == self.weights.len()
            && scalar::dot(&self.coefficients, &self.weights) == self.target
            && (!self.positive || self.coefficients.iter().all(|c| !c.is_zero()))
    }

    /// Positive representation of `Σd` by the pair's weights; checked.
    pub(crate) fn for_pair(pair: &WeightedPair<T>, coefficients: Vec<T>) -> Result<Self, RepresentError> {
        let rep = Self {
            coefficients,
            target: pair.degree_sum(),
            weights: pair.weights().to_vec(),
            positive: true,
        };
        if rep.verify() {
            Ok(rep)
        } else {
            Err(RepresentError::ProofPathExhausted {
                reason: format!(
                    "coefficients {:?} do not represent {} for {pair}",
                    rep.coefficients, rep.target
                ),
                trace: Vec::new(),
            })
        }
    }
}

/// Lexicographically greatest `α >= 0` on the ascending order of the
/// weights (the smallest weights take as much as possible) with
/// `Σ α_l a_l = target`, reported in the order `weights` was given. `None`
/// when no such `α` exists.
pub fn find_nonneg_representation<T: Weight>(
    target: &T,
    weights: &[T],
    budget: ResidueBudget,
) -> Result<Option<Representation<T>>, RepresentError> {
    if weights.is_empty() {
        return Err(PairError::NoWeights.into());
    }
    if weights.iter().any(Zero::is_zero) {
        return Err(PairError::NonPositiveEntry.into());
    }
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&x, &y| weights[x].cmp(&weights[y]));
    // weights above the target can only take coefficient 0
    let active: Vec<usize> = order.iter().copied().filter(|&l| weights[l] <= *target).collect();
    let mut small = Vec::with_capacity(active.len());
    for &l in &active {
        let w = weights[l].to_u64().ok_or(RepresentError::Budget {
            needed: u128::MAX,
            budget: budget.max_residues,
        })?;
        small.push(w);
    }
    let tables = SuffixTables::build(&small, budget.max_residues)?;
    let Some(alpha) = tables.lex_greatest(target) else {
        return Ok(None);
    };
    let mut coefficients = vec![T::zero(); weights.len()];
    for (slot, value) in active.into_iter().zip(alpha) {
        coefficients[slot] = value;
    }
    let rep = Representation {
        coefficients,
        target: target.clone(),
        weights: weights.to_vec(),
        positive: false,
    };
    assert!(rep.verify(), "residue oracle returned a non-solution");
    Ok(Some(rep))
}

/// Positive `β` with `Σd = Σ β_l a_l`: a nonnegative representation of the
/// index, shifted up by one. `None` whenever the index is negative.
pub fn find_positive_representation<T: Weight>(
    pair: &WeightedPair<T>,
    budget: ResidueBudget,
) -> Result<Option<Representation<T>>, RepresentError> {
    if pair.is_degenerate() {
        return Err(PairError::Degenerate.into());
    }
    let Some(index) = pair.nonnegative_index() else {
        return Ok(None);
    };
    let Some(alpha) = find_nonneg_representation(&index, pair.weights(), budget)? else {
        return Ok(None);
    };
    let coefficients = alpha.coefficients.into_iter().map(|c| c + T::one()).collect();
    let rep = Representation::for_pair(pair, coefficients)?;
    Ok(Some(rep))
}

/// A pair obtained by deleting or dividing entries, with the position in the
/// parent of every surviving weight.
pub(crate) struct Reduced<T> {
    pub pair: WeightedPair<T>,
    pub origin: Vec<usize>,
}

impl<T: Weight> Reduced<T> {
    pub(crate) fn new(degrees: Vec<T>, mut weights: Vec<(T, usize)>) -> Self {
        weights.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
        let origin = weights.iter().map(|w| w.1).collect();
        let pair = WeightedPair::from_parts(degrees, weights.into_iter().map(|w| w.0).collect());
        Self { pair, origin }
    }

    /// Writes `f(j, β_j)` for each sub-weight `j` into the parent slot.
    pub(crate) fn lift(&self, sub: Vec<T>, parent: &mut [T], f: impl Fn(usize, T) -> T) {
        for (j, value) in sub.into_iter().enumerate() {
            parent[self.origin[j]] = f(self.origin[j], value);
        }
    }
}

/// `pair` without the degrees at `drop_degrees` and the weights at
/// `drop_weights`.
pub(crate) fn without<T: Weight>(pair: &WeightedPair<T>, drop_degrees: &[usize], drop_weights: &[usize]) -> Reduced<T> {
    let degrees = pair
        .degrees()
        .iter()
        .enumerate()
        .filter(|(u, _)| !drop_degrees.contains(u))
        .map(|(_, d)| d.clone())
        .collect();
    let weights = pair
        .weights()
        .iter()
        .enumerate()
        .filter(|(l, _)| !drop_weights.contains(l))
        .map(|(l, a)| (a.clone(), l))
        .collect();
    Reduced::new(degrees, weights)
}

/// Shared step of both builders: with a weight equal to 1, put the whole
/// index on it.
pub(crate) fn absorb_by_unit_weight<T: Weight>(pair: &WeightedPair<T>, index: &T) -> Option<Vec<T>> {
    let l = pair.weights().iter().position(One::is_one)?;
    let mut beta = vec![T::one(); pair.weights().len()];
    beta[l] = index.clone() + T::one();
    Some(beta)
}

pub(crate) fn exhausted(reason: impl Into<String>, trace: &[String]) -> RepresentError {
    RepresentError::ProofPathExhausted {
        reason: reason.into(),
        trace: trace.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: &[u64], a: &[u64]) -> WeightedPair<u64> {
        WeightedPair::new(d.to_vec(), a.to_vec()).unwrap()
    }

    const B: ResidueBudget = ResidueBudget { max_residues: 1 << 20 };

    #[test]
    fn nonneg_examples() {
        let zero = find_nonneg_representation(&0u64, &[4, 9], B).unwrap().unwrap();
        assert_eq!(zero.coefficients, vec![0, 0]);
        assert_eq!(find_nonneg_representation(&2u64, &[6, 14, 21], B).unwrap(), None);
        let eight = find_nonneg_representation(&8u64, &[3, 5], B).unwrap().unwrap();
        assert_eq!(eight.coefficients, vec![1, 1]);
    }

    #[test]
    fn nonneg_reports_in_input_order() {
        let rep = find_nonneg_representation(&8u64, &[5, 3], B).unwrap().unwrap();
        assert_eq!(rep.coefficients, vec![1, 1]);
        // lexicographic on ascending weights: as many 2s as possible
        let rep = find_nonneg_representation(&12u64, &[3, 2], B).unwrap().unwrap();
        assert_eq!(rep.coefficients, vec![0, 6]);
        let rep = find_nonneg_representation(&13u64, &[3, 2], B).unwrap().unwrap();
        assert_eq!(rep.coefficients, vec![1, 5]);
    }

    #[test]
    fn positive_examples() {
        let rep = find_positive_representation(&p(&[4], &[1, 1, 1]), B).unwrap().unwrap();
        assert_eq!(rep.coefficients, vec![2, 1, 1]);
        assert!(rep.verify());
        assert_eq!(find_positive_representation(&p(&[6], &[3, 2]), B).unwrap(), None);
        assert_eq!(
            find_positive_representation(&p(&[84], &[6, 6, 14, 14, 21, 21]), B).unwrap(),
            None
        );
        assert_eq!(find_positive_representation(&p(&[3], &[1, 1, 1, 1]), B).unwrap(), None);
    }

    #[test]
    fn verify_rejects_bad_certificates() {
        let rep = Representation {
            coefficients: vec![1u64, 0],
            target: 3,
            weights: vec![3, 2],
            positive: true,
        };
        assert!(!rep.verify());
    }
}
