//! Degree/weight pairs and the divisibility checks on them.
//!
//! A pair is a multidegree `(d_1, ..., d_k)` together with weights
//! `(a_0, ..., a_N)`. Both lists are kept sorted ascending, and every index
//! reported by a witness refers to that canonical order.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::PairError;
use crate::scalar::{self, Weight};

/// Multidegree plus weights, both sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedPair<T> {
    degrees: Vec<T>,
    weights: Vec<T>,
}

impl<T: Weight> WeightedPair<T> {
    /// Builds a pair in canonical form. At least one degree and one weight
    /// are required and every entry must be positive.
    pub fn new(mut degrees: Vec<T>, mut weights: Vec<T>) -> Result<Self, PairError> {
        if degrees.is_empty() {
            return Err(PairError::NoDegrees);
        }
        if weights.is_empty() {
            return Err(PairError::NoWeights);
        }
        if degrees.iter().chain(&weights).any(Zero::is_zero) {
            return Err(PairError::NonPositiveEntry);
        }
        degrees.sort();
        weights.sort();
        Ok(Self { degrees, weights })
    }

    /// Bypasses validation; the caller guarantees positivity. Degrees may be
    /// empty, which marks the result degenerate.
    pub(crate) fn from_parts(mut degrees: Vec<T>, mut weights: Vec<T>) -> Self {
        degrees.sort();
        weights.sort();
        Self { degrees, weights }
    }

    pub fn degrees(&self) -> &[T] {
        &self.degrees
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Codimension `k`.
    pub fn codimension(&self) -> usize {
        self.degrees.len()
    }

    /// `N`, one less than the number of weights.
    pub fn ambient_dimension(&self) -> usize {
        self.weights.len() - 1
    }

    /// `n = N - k`; negative when there are more degrees than `N`.
    pub fn dimension(&self) -> i64 {
        self.ambient_dimension() as i64 - self.codimension() as i64
    }

    pub fn degree_sum(&self) -> T {
        scalar::sum(&self.degrees)
    }

    pub fn weight_sum(&self) -> T {
        scalar::sum(&self.weights)
    }

    /// `i = Σd - Σa`.
    pub fn index(&self) -> BigInt {
        self.degree_sum().to_bigint() - self.weight_sum().to_bigint()
    }

    /// The index when it is nonnegative, in the pair's own scalar.
    pub fn nonnegative_index(&self) -> Option<T> {
        self.degree_sum().checked_minus(&self.weight_sum())
    }

    /// True for the empty-degree pairs `normalize` can produce.
    pub fn is_degenerate(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn map<U: Weight>(&self, f: impl Fn(&T) -> U) -> WeightedPair<U> {
        WeightedPair::from_parts(
            self.degrees.iter().map(&f).collect(),
            self.weights.iter().map(&f).collect(),
        )
    }
}

impl<T: Weight> fmt::Display for WeightedPair<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[T]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "(({}),({}))", join(&self.degrees), join(&self.weights))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassKind {
    Fano,
    CalabiYau,
    GeneralType,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassKind::Fano => "Fano",
            ClassKind::CalabiYau => "CalabiYau",
            ClassKind::GeneralType => "GeneralType",
        })
    }
}

/// Kind together with the index that decides it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairClass {
    pub kind: ClassKind,
    pub index: BigInt,
}

pub fn classify<T: Weight>(pair: &WeightedPair<T>) -> PairClass {
    let index = pair.index();
    let kind = match index.sign() {
        num_bigint::Sign::Minus => ClassKind::Fano,
        num_bigint::Sign::NoSign => ClassKind::CalabiYau,
        num_bigint::Sign::Plus => ClassKind::GeneralType,
    };
    PairClass { kind, index }
}

/// A divisor `δ > 1` dividing more weights than degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityWitness<T> {
    pub divisor: T,
    /// Canonical indices of the weights divisible by `divisor`.
    pub weight_indices: Vec<usize>,
    pub degree_count: usize,
}

impl<T: Weight> RegularityWitness<T> {
    /// Re-checks the witness against the pair by divisibility alone.
    pub fn confirms(&self, pair: &WeightedPair<T>) -> bool {
        let weights: Vec<usize> = (0..pair.weights.len())
            .filter(|&l| pair.weights[l].is_multiple_of(&self.divisor))
            .collect();
        let degrees = pair.degrees.iter().filter(|d| d.is_multiple_of(&self.divisor)).count();
        self.divisor > T::one()
            && weights == self.weight_indices
            && degrees == self.degree_count
            && degrees < weights.len()
    }
}

/// Every gcd of a nonempty subset of `values`, excluding 1.
///
/// For any `δ > 1` the set of weights divisible by `δ` is also the set of
/// weights divisible by its gcd `G`, while fewer degrees can be divisible by
/// `G` than by `δ`. So the divisor condition only has to be checked at these
/// subset gcds, and no factorisation is needed.
fn subset_gcds<T: Weight>(values: &[T]) -> BTreeSet<T> {
    let mut found: BTreeSet<T> = BTreeSet::new();
    for value in values {
        let mut next: Vec<T> = found.iter().map(|g| g.gcd(value)).collect();
        next.push(value.clone());
        found.extend(next);
    }
    found.remove(&T::one());
    found
}

/// Regularity: for every `δ > 1`, at least as many degrees as weights are
/// divisible by `δ`. Returns the smallest failing `δ` as witness.
pub fn is_regular<T: Weight>(pair: &WeightedPair<T>) -> (bool, Option<RegularityWitness<T>>) {
    for divisor in subset_gcds(&pair.weights) {
        let weight_indices: Vec<usize> = (0..pair.weights.len())
            .filter(|&l| pair.weights[l].is_multiple_of(&divisor))
            .collect();
        let degree_count = pair.degrees.iter().filter(|d| d.is_multiple_of(&divisor)).count();
        if degree_count < weight_indices.len() {
            return (
                false,
                Some(RegularityWitness {
                    divisor,
                    weight_indices,
                    degree_count,
                }),
            );
        }
    }
    (true, None)
}

/// Well-formedness of `P(a_0, ..., a_N)`: dropping any one weight leaves
/// weights with gcd 1.
pub fn is_space_well_formed<T: Weight>(weights: &[T]) -> Result<bool, PairError> {
    if weights.len() < 2 {
        return Err(PairError::TooFewWeights(weights.len()));
    }
    Ok((0..weights.len()).all(|skip| {
        let g = scalar::gcd_all(
            weights
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != skip)
                .map(|(_, w)| w.clone()),
        );
        g.is_one()
    }))
}

/// Weight `a_l` not dividing degree `d_u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartierWitness<T> {
    pub weight_index: usize,
    pub degree_index: usize,
    pub weight: T,
    pub degree: T,
}

pub fn is_cartier<T: Weight>(pair: &WeightedPair<T>) -> (bool, Option<CartierWitness<T>>) {
    for (l, a) in pair.weights.iter().enumerate() {
        for (u, d) in pair.degrees.iter().enumerate() {
            if !d.is_multiple_of(a) {
                return (
                    false,
                    Some(CartierWitness {
                        weight_index: l,
                        degree_index: u,
                        weight: a.clone(),
                        degree: d.clone(),
                    }),
                );
            }
        }
    }
    (true, None)
}

/// The lcm of the weights, the degree generating the Picard group of a well
/// formed weighted projective space.
pub fn picard_generator<T: Weight>(weights: &[T]) -> Result<T, PairError> {
    if weights.is_empty() {
        return Err(PairError::NoWeights);
    }
    if weights.iter().any(Zero::is_zero) {
        return Err(PairError::NonPositiveEntry);
    }
    Ok(weights.iter().fold(T::one(), |acc, w| acc.lcm(w)))
}

/// First `(u, l)` with `d_u = a_l`.
pub fn is_linear_cone<T: Weight>(pair: &WeightedPair<T>) -> (bool, Option<(usize, usize)>) {
    for (u, d) in pair.degrees.iter().enumerate() {
        if let Some(l) = pair.weights.iter().position(|a| a == d) {
            return (true, Some((u, l)));
        }
    }
    (false, None)
}

/// Removes matched `d_u = a_l` pairs until no degree equals a weight. The
/// result may have no degrees left; check [`WeightedPair::is_degenerate`].
pub fn normalize<T: Weight>(pair: &WeightedPair<T>) -> WeightedPair<T> {
    let mut degrees = Vec::with_capacity(pair.degrees.len());
    let mut weights = pair.weights.clone();
    for d in &pair.degrees {
        match weights.iter().position(|a| a == d) {
            Some(l) => {
                weights.remove(l);
            }
            None => degrees.push(d.clone()),
        }
    }
    WeightedPair::from_parts(degrees, weights)
}

/// Outcome of the minimal-weight bound for Fano and Calabi-Yau pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PstOutcome {
    pub holds: bool,
    /// The pair has the shape `((6^k), (1^s, 2^k, 3^k))`.
    pub exceptional_shape: bool,
}

/// For a regular Fano or Calabi-Yau pair without linear-cone matches,
/// checks `a_{k-i-1} = 1` and, outside the `((6^k),(1^s,2^k,3^k))` shape,
/// `a_{k-i} = 1` (weights sorted ascending, zero-based).
pub fn check_pst_bound<T: Weight>(pair: &WeightedPair<T>) -> Result<PstOutcome, PairError> {
    if pair.is_degenerate() {
        return Err(PairError::Degenerate);
    }
    if !is_regular(pair).0 {
        return Err(PairError::Precondition("pair is not regular".into()));
    }
    let class = classify(pair);
    if class.kind == ClassKind::GeneralType {
        return Err(PairError::Precondition("pair is of general type".into()));
    }
    if is_linear_cone(pair).0 {
        return Err(PairError::Precondition("a degree equals a weight".into()));
    }
    let k = BigInt::from(pair.codimension());
    // i <= 0, so both positions are at least k - 1 >= 0
    let first = usize::try_from(k.clone() - &class.index - BigInt::one())
        .map_err(|_| PairError::Precondition("index out of range".into()))?;
    let is_one = |pos: usize| pair.weights.get(pos).is_some_and(One::is_one);
    let exceptional_shape = is_exceptional_shape(pair);
    let holds = is_one(first) && (exceptional_shape || is_one(first + 1));
    Ok(PstOutcome {
        holds,
        exceptional_shape,
    })
}

fn is_exceptional_shape<T: Weight>(pair: &WeightedPair<T>) -> bool {
    let k = pair.codimension();
    let six = T::small(6);
    if pair.degrees.iter().any(|d| *d != six) {
        return false;
    }
    let count = |v: u64| pair.weights.iter().filter(|a| **a == T::small(v)).count();
    let ones = count(1);
    count(2) == k && count(3) == k && ones + 2 * k == pair.weights.len()
}

/// Aggregate of the divisibility checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport<T> {
    pub regular: bool,
    pub regular_witness: Option<RegularityWitness<T>>,
    pub space_well_formed: bool,
    pub cartier: bool,
    pub cartier_witness: Option<CartierWitness<T>>,
    pub linear_cone: bool,
    pub linear_cone_match: Option<(usize, usize)>,
}

pub fn check<T: Weight>(pair: &WeightedPair<T>) -> CheckReport<T> {
    let (regular, regular_witness) = is_regular(pair);
    let (cartier, cartier_witness) = is_cartier(pair);
    let (linear_cone, linear_cone_match) = is_linear_cone(pair);
    CheckReport {
        regular,
        regular_witness,
        // a single weight is P^0, which is trivially well formed
        space_well_formed: is_space_well_formed(&pair.weights).unwrap_or(true),
        cartier,
        cartier_witness,
        linear_cone,
        linear_cone_match,
    }
}

/// Sign of `Σd - Σa` without building a `BigInt`.
pub fn index_sign<T: Weight>(pair: &WeightedPair<T>) -> Ordering {
    pair.degree_sum().cmp(&pair.weight_sum())
}

impl PairClass {
    pub fn is_positive(&self) -> bool {
        self.index.is_positive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: &[u64], a: &[u64]) -> WeightedPair<u64> {
        WeightedPair::new(d.to_vec(), a.to_vec()).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&p(&[5], &[1, 1, 1, 1, 1])).kind, ClassKind::CalabiYau);
        let fano = classify(&p(&[3], &[1, 1, 1, 1]));
        assert_eq!((fano.kind, fano.index), (ClassKind::Fano, BigInt::from(-1)));
        let gt = classify(&p(&[84], &[6, 6, 14, 14, 21, 21]));
        assert_eq!((gt.kind, gt.index), (ClassKind::GeneralType, BigInt::from(2)));
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(WeightedPair::<u64>::new(vec![], vec![1]), Err(PairError::NoDegrees));
        assert_eq!(WeightedPair::<u64>::new(vec![1], vec![]), Err(PairError::NoWeights));
        assert_eq!(
            WeightedPair::<u64>::new(vec![0], vec![1]),
            Err(PairError::NonPositiveEntry)
        );
        let pair = p(&[6, 2], &[3, 1, 2]);
        assert_eq!(pair.degrees(), &[2, 6]);
        assert_eq!(pair.weights(), &[1, 2, 3]);
    }

    #[test]
    fn regularity_examples() {
        assert!(is_regular(&p(&[6], &[1, 2, 3])).0);

        let pair = p(&[30], &[6, 2, 3, 5]);
        let (ok, witness) = is_regular(&pair);
        assert!(!ok);
        let witness = witness.unwrap();
        assert_eq!(witness.divisor, 2);
        assert_eq!(witness.weight_indices.len(), 2);
        assert_eq!(witness.degree_count, 1);
        assert!(witness.confirms(&pair));

        // δ = 21 fails here too (two weights, one degree); the smallest
        // failing divisor is reported
        let pair = p(&[84], &[6, 6, 14, 14, 21, 21]);
        let (ok, witness) = is_regular(&pair);
        assert!(!ok);
        assert!(witness.unwrap().confirms(&pair));
        let weights21 = pair.weights().iter().filter(|a| *a % 21 == 0).count();
        assert_eq!(weights21, 2);
    }

    #[test]
    fn well_formed_examples() {
        assert!(is_space_well_formed(&[1u64, 1, 1, 1]).unwrap());
        assert!(is_space_well_formed(&[6u64, 6, 14, 14, 21, 21]).unwrap());
        // dropping 15 leaves gcd(10, 6) = 2
        assert!(!is_space_well_formed(&[15u64, 10, 6]).unwrap());
        assert!(is_space_well_formed(&[2u64, 3, 5]).unwrap());
        assert!(!is_space_well_formed(&[2u64, 2, 3]).unwrap());
        assert!(is_space_well_formed(&[2u64]).is_err());
    }

    #[test]
    fn cartier_and_picard_examples() {
        assert!(is_cartier(&p(&[84], &[6, 6, 14, 14, 21, 21])).0);
        assert!(is_cartier(&p(&[6], &[1, 2, 3])).0);
        let (ok, w) = is_cartier(&p(&[5], &[1, 2]));
        assert!(!ok);
        let w = w.unwrap();
        assert_eq!((w.weight, w.degree), (2, 5));

        assert_eq!(picard_generator(&[1u64, 1, 1]).unwrap(), 1);
        assert_eq!(picard_generator(&[6u64, 14, 21]).unwrap(), 42);
        assert_eq!(picard_generator(&[2u64, 3, 5]).unwrap(), 30);
        assert_eq!(picard_generator(&[2u64, 2, 3]).unwrap(), 6);
        assert_eq!(picard_generator::<u64>(&[]), Err(PairError::NoWeights));
    }

    #[test]
    fn linear_cone_and_normalize_examples() {
        assert_eq!(is_linear_cone(&p(&[4], &[1, 1, 4])), (true, Some((0, 2))));
        assert_eq!(is_linear_cone(&p(&[5], &[1, 1, 1])), (false, None));
        assert_eq!(is_linear_cone(&p(&[6, 6], &[2, 2, 3, 3])), (false, None));

        let pure = normalize(&p(&[4], &[1, 1, 4]));
        assert!(pure.is_degenerate());
        assert_eq!(pure.weights(), &[1, 1]);

        assert_eq!(normalize(&p(&[4, 2], &[2, 1, 1, 1])), p(&[4], &[1, 1, 1]));
        assert_eq!(normalize(&p(&[5], &[1, 1, 1])), p(&[5], &[1, 1, 1]));
        assert_eq!(normalize(&p(&[6, 6], &[6, 2, 3, 1])), p(&[6], &[1, 2, 3]));
    }

    #[test]
    fn pst_examples() {
        let r = check_pst_bound(&p(&[5], &[1, 1, 1, 1, 1])).unwrap();
        assert!(r.holds && !r.exceptional_shape);
        let r = check_pst_bound(&p(&[6, 6], &[1, 1, 2, 2, 3, 3])).unwrap();
        assert!(r.holds && r.exceptional_shape);
        assert!(check_pst_bound(&p(&[3], &[1, 1, 1, 1])).unwrap().holds);

        assert!(matches!(
            check_pst_bound(&p(&[84], &[6, 6, 14, 14, 21, 21])),
            Err(PairError::Precondition(_))
        ));
        assert!(matches!(
            check_pst_bound(&p(&[20], &[1, 1, 4, 5])),
            Err(PairError::Precondition(_))
        ));
    }
}
