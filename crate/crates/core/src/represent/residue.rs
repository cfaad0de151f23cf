//! Coin-problem shortest paths over residue classes.
//!
//! For weights `w_l <= ... <= w_last` sorted ascending, the table for suffix
//! `l` stores, for every residue `r mod w_l`, the smallest value congruent to
//! `r` that is a nonnegative combination of `w_l, ..., w_last`. A value `v`
//! is representable by the suffix iff `v >= table[v mod w_l]`, because adding
//! `w_l` keeps a value representable. Memory is `Σ w_l`, independent of the
//! target.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::RepresentError;
use crate::scalar::Weight;

const UNREACHABLE: u128 = u128::MAX;

pub(crate) struct SuffixTables {
    weights: Vec<u64>,
    tables: Vec<Vec<u128>>,
}

impl SuffixTables {
    /// `weights` must be sorted ascending and nonzero.
    pub(crate) fn build(weights: &[u64], max_residues: u64) -> Result<Self, RepresentError> {
        let needed: u128 = weights
            .iter()
            .take(weights.len().saturating_sub(1))
            .map(|&w| w as u128)
            .sum();
        if needed > max_residues as u128 {
            return Err(RepresentError::Budget {
                needed,
                budget: max_residues,
            });
        }
        let mut tables = Vec::with_capacity(weights.len());
        for l in 0..weights.len() {
            if l + 1 == weights.len() {
                // a single weight: only multiples, checked directly
                tables.push(Vec::new());
            } else {
                tables.push(shortest_paths(weights[l], &weights[l + 1..]));
            }
        }
        Ok(Self {
            weights: weights.to_vec(),
            tables,
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.weights.len()
    }

    /// Whether `value` is a nonnegative combination of `weights[suffix..]`.
    pub(crate) fn representable<T: Weight>(&self, suffix: usize, value: &T) -> bool {
        let modulus = T::small(self.weights[suffix]);
        let residue = (value.clone() % modulus).to_u64().expect("residue below a u64 modulus");
        if suffix + 1 == self.weights.len() {
            return residue == 0;
        }
        let least = self.tables[suffix][residue as usize];
        if least == UNREACHABLE {
            return false;
        }
        value.to_u128().is_none_or(|v| v >= least)
    }

    /// Lexicographically greatest coefficient vector with
    /// `Σ α_l w_l = target`, or `None`: each `α_l` in turn is as large as the
    /// remaining suffix allows.
    pub(crate) fn lex_greatest<T: Weight>(&self, target: &T) -> Option<Vec<T>> {
        if self.weights.is_empty() {
            return target.is_zero().then(Vec::new);
        }
        if !self.representable(0, target) {
            return None;
        }
        let mut rest = target.clone();
        let mut out = Vec::with_capacity(self.len());
        for l in 0..self.len() {
            let w = T::small(self.weights[l]);
            if l + 1 == self.len() {
                debug_assert!(rest.is_multiple_of(&w));
                out.push(rest.clone() / w);
                break;
            }
            // descending from the largest α; rest is representable by
            // suffix l, so some α >= 0 works and the loop ends
            let mut alpha = rest.clone() / w.clone();
            let mut left = rest.clone() - alpha.clone() * w.clone();
            while !self.representable(l + 1, &left) {
                alpha = alpha - T::one();
                left = left + w.clone();
            }
            out.push(alpha);
            rest = left;
        }
        Some(out)
    }
}

/// Dijkstra over residues mod `modulus` with one edge per other weight.
fn shortest_paths(modulus: u64, others: &[u64]) -> Vec<u128> {
    let m = modulus as usize;
    let mut steps: Vec<u64> = others.iter().copied().filter(|w| w % modulus != 0).collect();
    steps.sort_unstable();
    steps.dedup();
    let mut least = vec![UNREACHABLE; m];
    least[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u128, 0usize)));
    while let Some(Reverse((dist, r))) = heap.pop() {
        if dist > least[r] {
            continue;
        }
        for &w in &steps {
            let next = ((r as u128 + w as u128) % modulus as u128) as usize;
            let cand = dist + w as u128;
            if cand < least[next] {
                least[next] = cand;
                heap.push(Reverse((cand, next)));
            }
        }
    }
    least
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_match_small_cases() {
        let t = SuffixTables::build(&[3, 5], 1 << 20).unwrap();
        for v in 0u64..40 {
            let expected = (0..=v / 3).any(|a| (v - 3 * a) % 5 == 0);
            assert_eq!(t.representable(0, &v), expected, "v = {v}");
        }
        assert_eq!(t.lex_greatest(&8u64), Some(vec![1, 1]));
        assert_eq!(t.lex_greatest(&7u64), None);
        assert_eq!(t.lex_greatest(&15u64), Some(vec![5, 0]));
        let t = SuffixTables::build(&[4, 6, 9], 1 << 20).unwrap();
        assert_eq!(t.lex_greatest(&19u64), Some(vec![1, 1, 1]));
        assert_eq!(t.lex_greatest(&21u64), Some(vec![3, 0, 1]));
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            SuffixTables::build(&[1000, 1001, 1002], 1500),
            Err(RepresentError::Budget { .. })
        ));
    }
}
