//! Hodge numbers from generating functions.
//!
//! `h^{0,n}` is the coefficient of `t^{i}` in the Hilbert series
//! `Π_u (1 - t^{d_u}) / Π_l (1 - t^{a_l})` of a complete intersection with
//! the given degrees, `i` being the index. For Cartier hypersurfaces the
//! Fermat polynomial `Σ x_l^{d/a_l}` has a monomial Jacobian ring, which gives
//! every primitive middle Hodge number.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{HodgeError, PairError};
use crate::pairs::{classify, is_cartier, is_regular, ClassKind, WeightedPair};
use crate::represent::{find_positive_representation, ResidueBudget};
use crate::scalar::Weight;
use crate::series;

/// Largest truncation degree any series here will allocate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesBudget {
    pub max_degree: usize,
}

impl Default for SeriesBudget {
    fn default() -> Self {
        Self { max_degree: 1 << 24 }
    }
}

fn truncation(degree: &BigInt, budget: SeriesBudget) -> Result<usize, HodgeError> {
    degree
        .to_usize()
        .filter(|&d| d <= budget.max_degree)
        .ok_or_else(|| HodgeError::Budget {
            needed: degree.to_string(),
            budget: budget.max_degree,
        })
}

/// Exponents that can influence the series up to `degree`.
fn exponents<T: Weight>(values: &[T], degree: usize) -> Vec<usize> {
    values
        .iter()
        .filter_map(|v| v.to_usize())
        .filter(|&v| v <= degree)
        .collect()
}

fn coefficient_at<T: Weight>(
    numerator: &[T],
    denominator: &[T],
    degree: &BigInt,
    budget: SeriesBudget,
) -> Result<BigInt, HodgeError> {
    if degree.is_negative() {
        return Ok(BigInt::zero());
    }
    // every factor with exponent above the degree is 1 in the truncation
    let degree_big = degree.to_biguint().expect("nonnegative");
    let relevant = |v: &[T]| v.iter().any(|x| x.to_biguint() <= degree_big);
    if !relevant(numerator) && !relevant(denominator) {
        return Ok(if degree.is_zero() {
            BigInt::from(1)
        } else {
            BigInt::zero()
        });
    }
    let top = truncation(degree, budget)?;
    let coeffs = series::exact_quotient_coefficients(&exponents(numerator, top), &exponents(denominator, top), top);
    Ok(coeffs[top].clone())
}

/// Number of `α >= 0` with `Σ α_l a_l = m`.
pub fn count_monomials<T: Weight>(weights: &[T], m: &BigInt, budget: SeriesBudget) -> Result<BigUint, HodgeError> {
    if weights.iter().any(Zero::is_zero) {
        return Err(PairError::NonPositiveEntry.into());
    }
    let value = coefficient_at::<T>(&[], weights, m, budget)?;
    Ok(value.to_biguint().expect("monomial counts are nonnegative"))
}

/// `h^{0,n}`: the coefficient of `t^{i}` in the complete-intersection series;
/// zero for negative index.
pub fn h0n<T: Weight>(pair: &WeightedPair<T>, budget: SeriesBudget) -> Result<BigUint, HodgeError> {
    if pair.is_degenerate() {
        return Err(PairError::Degenerate.into());
    }
    let index = pair.index();
    let value = coefficient_at(pair.degrees(), pair.weights(), &index, budget)?;
    value.to_biguint().ok_or_else(|| HodgeError::NegativeCoefficient {
        degree: index.to_string(),
        value: value.to_string(),
    })
}

/// Which statement predicts the Hodge level of the pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremBranch {
    /// Negative index: `h^{0,n} = 0`.
    Fano,
    /// Zero index: `h^{0,n} = 1`.
    CalabiYau,
    /// Cartier, regular, positive index: maximal level.
    CartierGeneralType,
    /// Codimension at most 2, regular, positive index: maximal level.
    Codim2GeneralType,
    Unclassified,
}

impl TheoremBranch {
    /// The predicted value of "Hodge level is maximal", if any.
    pub fn prediction(self) -> Option<bool> {
        match self {
            TheoremBranch::Fano => Some(false),
            TheoremBranch::CalabiYau | TheoremBranch::CartierGeneralType | TheoremBranch::Codim2GeneralType => {
                Some(true)
            }
            TheoremBranch::Unclassified => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeVerdict {
    pub dimension: i64,
    pub index: BigInt,
    pub h0n: BigUint,
    pub hodge_level_max: bool,
    pub branch: TheoremBranch,
}

impl HodgeVerdict {
    /// False when a branch predicts the opposite of what was computed.
    pub fn agrees_with_branch(&self) -> bool {
        self.branch.prediction().is_none_or(|p| p == self.hodge_level_max)
    }
}

pub fn hodge_level_verdict<T: Weight>(
    pair: &WeightedPair<T>,
    budget: SeriesBudget,
) -> Result<HodgeVerdict, HodgeError> {
    if pair.is_degenerate() {
        return Err(PairError::Degenerate.into());
    }
    if pair.ambient_dimension() <= pair.codimension() {
        return Err(PairError::Precondition("the verdict needs N > k".into()).into());
    }
    let h0n = h0n(pair, budget)?;
    let class = classify(pair);
    let branch = match class.kind {
        ClassKind::Fano => TheoremBranch::Fano,
        ClassKind::CalabiYau => TheoremBranch::CalabiYau,
        ClassKind::GeneralType => {
            let regular = is_regular(pair).0;
            if regular && is_cartier(pair).0 {
                TheoremBranch::CartierGeneralType
            } else if regular && pair.codimension() <= 2 {
                TheoremBranch::Codim2GeneralType
            } else {
                TheoremBranch::Unclassified
            }
        }
    };
    Ok(HodgeVerdict {
        dimension: pair.dimension(),
        index: class.index,
        hodge_level_max: !h0n.is_zero(),
        h0n,
        branch,
    })
}

/// Primitive middle Hodge numbers; entry `q` is `h_pr^{n-q,q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeVector(pub Vec<BigUint>);

impl HodgeVector {
    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

/// Primitive middle Hodge numbers of a Cartier hypersurface: entry `q` is
/// the coefficient of `t^{(q+1)d - Σa}` in `Π_l (1 - t^{d-a_l}) / (1 - t^{a_l})`.
pub fn hypersurface_middle_hodge<T: Weight>(
    pair: &WeightedPair<T>,
    budget: SeriesBudget,
) -> Result<HodgeVector, HodgeError> {
    if pair.codimension() != 1 {
        return Err(HodgeError::Unsupported(format!(
            "middle Hodge numbers need a hypersurface, got codimension {}",
            pair.codimension()
        )));
    }
    if !is_cartier(pair).0 {
        return Err(HodgeError::Unsupported(
            "a non-Cartier hypersurface has no Fermat model to read the Jacobian ring from".into(),
        ));
    }
    let d = pair.degrees()[0].to_bigint();
    let weight_sum = pair.weight_sum().to_bigint();
    let n = pair.ambient_dimension();
    let numerator: Vec<T> = pair
        .weights()
        .iter()
        .map(|a| pair.degrees()[0].clone() - a.clone())
        .collect();
    let top = BigInt::from(n + 1) * &d - &weight_sum;
    if top.is_negative() {
        return Ok(HodgeVector(vec![BigUint::zero(); n]));
    }
    let len = truncation(&top, budget)?;
    let coeffs = series::exact_quotient_coefficients(&exponents(&numerator, len), &exponents(pair.weights(), len), len);
    let entries = (0..n)
        .map(|q| {
            let at = BigInt::from(q + 1) * &d - &weight_sum;
            match at.to_usize() {
                Some(j) if !at.is_negative() => coeffs[j]
                    .to_biguint()
                    .expect("Jacobian ring dimensions are nonnegative"),
                _ => BigUint::zero(),
            }
        })
        .collect();
    Ok(HodgeVector(entries))
}

/// `h^{0,n} > 0` exactly when a positive representation of `Σd` exists.
pub fn verify_h0n_consistency<T: Weight>(
    pair: &WeightedPair<T>,
    series_budget: SeriesBudget,
    residue_budget: ResidueBudget,
) -> Result<bool, HodgeError> {
    let positive = !h0n(pair, series_budget)?.is_zero();
    let represented = find_positive_representation(pair, residue_budget)
        .map_err(|e| HodgeError::Unsupported(e.to_string()))?
        .is_some();
    Ok(positive == represented)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: &[u64], a: &[u64]) -> WeightedPair<u64> {
        WeightedPair::new(d.to_vec(), a.to_vec()).unwrap()
    }

    const S: SeriesBudget = SeriesBudget { max_degree: 1 << 20 };

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(
            count_monomials(&[1u64, 1, 1, 1], &BigInt::from(2), S).unwrap(),
            BigUint::from(10u32)
        );
        assert_eq!(
            count_monomials(&[2u64, 3], &BigInt::from(6), S).unwrap(),
            BigUint::from(2u32)
        );
        assert_eq!(
            count_monomials(&[2u64, 3], &BigInt::from(1), S).unwrap(),
            BigUint::zero()
        );
        assert_eq!(
            count_monomials(&[2u64, 3], &BigInt::from(-4), S).unwrap(),
            BigUint::zero()
        );
        assert_eq!(
            count_monomials(&[2u64, 3], &BigInt::from(0), S).unwrap(),
            BigUint::from(1u32)
        );
    }

    #[test]
    fn h0n_examples() {
        assert_eq!(h0n(&p(&[5], &[1, 1, 1, 1, 1]), S).unwrap(), BigUint::from(1u32));
        assert_eq!(h0n(&p(&[6], &[1, 1, 1, 1]), S).unwrap(), BigUint::from(10u32));
        assert_eq!(h0n(&p(&[84], &[6, 6, 14, 14, 21, 21]), S).unwrap(), BigUint::zero());
        assert_eq!(h0n(&p(&[3], &[1, 1, 1, 1]), S).unwrap(), BigUint::zero());
    }

    #[test]
    fn verdict_examples() {
        let v = hodge_level_verdict(&p(&[3], &[1, 1, 1, 1]), S).unwrap();
        assert_eq!((v.hodge_level_max, v.branch), (false, TheoremBranch::Fano));
        let v = hodge_level_verdict(&p(&[6, 6], &[2, 2, 3, 3]), S).unwrap();
        assert!(v.hodge_level_max && !v.h0n.is_zero());
        assert_eq!(v.branch, TheoremBranch::CartierGeneralType);
        let v = hodge_level_verdict(&p(&[84], &[6, 6, 14, 14, 21, 21]), S).unwrap();
        assert_eq!((v.hodge_level_max, v.branch), (false, TheoremBranch::Unclassified));
        assert!(v.agrees_with_branch());
        assert!(hodge_level_verdict(&p(&[6], &[3, 2]), S).is_err());
    }

    #[test]
    fn middle_hodge_examples() {
        assert_eq!(
            hypersurface_middle_hodge(&p(&[5], &[1, 1, 1, 1, 1]), S).unwrap().0,
            big(&[1, 101, 101, 1])
        );
        assert_eq!(
            hypersurface_middle_hodge(&p(&[3], &[1, 1, 1]), S).unwrap().0,
            big(&[1, 1])
        );
        assert_eq!(
            hypersurface_middle_hodge(&p(&[2], &[1, 1, 1]), S).unwrap().0,
            big(&[0, 0])
        );
        // K3 as a quartic surface: h_pr = (1, 19, 1)
        assert_eq!(
            hypersurface_middle_hodge(&p(&[4], &[1, 1, 1, 1]), S).unwrap().0,
            big(&[1, 19, 1])
        );
        assert!(hypersurface_middle_hodge(&p(&[5], &[1, 2]), S).is_err());
        assert!(hypersurface_middle_hodge(&p(&[6, 6], &[2, 2, 3, 3]), S).is_err());
    }

    #[test]
    fn consistency_examples() {
        let b = ResidueBudget::default();
        for pair in [
            p(&[5], &[1, 1, 1, 1, 1]),
            p(&[84], &[6, 6, 14, 14, 21, 21]),
            p(&[6], &[3, 2]),
        ] {
            assert!(verify_h0n_consistency(&pair, S, b).unwrap(), "{pair}");
        }
    }

    #[test]
    fn huge_weights_skip_the_series() {
        let w = BigUint::from(10u32).pow(40);
        let pair = WeightedPair::new(vec![w.clone() * 4u32 + 3u32], vec![w.clone(), w.clone(), w.clone(), w]).unwrap();
        assert_eq!(h0n(&pair, S).unwrap(), BigUint::zero());
    }
}
