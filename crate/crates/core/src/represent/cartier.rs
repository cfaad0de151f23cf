//! Constructive positive representations for Cartier regular pairs of
//! general type with `N > k`.
//!
//! The recursion, on the sum of the degrees:
//!
//! 1. a weight equal to 1 absorbs the whole index;
//! 2. a degree equal to a weight is deleted together with it (`β = 1`);
//! 3. for a prime `p` dividing the weights, divide the degrees and the
//!    weights of maximal `p`-adic valuation by `p`. A Calabi-Yau quotient is
//!    solved outright, a general-type quotient recursively. Primes are tried
//!    in ascending order;
//! 4. when every prime gives a Fano quotient the weights are squarefree and
//!    the pair reduces to a short list of explicit shapes, built from
//!    `pc + pc = 1·c + (p-1)·c + 1·p + (c-1)·p`.

use super::{absorb_by_unit_weight, exhausted, without, Reduced, Representation};
use crate::error::{PairError, RepresentError};
use crate::pairs::{classify, index_sign, is_cartier, is_linear_cone, is_regular, ClassKind, WeightedPair};
use crate::scalar::{self, Weight};
use std::cmp::Ordering;

pub fn constructive_representation_cartier<T: Weight>(
    pair: &WeightedPair<T>,
) -> Result<Representation<T>, RepresentError> {
    check_preconditions(pair)?;
    let mut trace = Vec::new();
    let beta = build(pair, &mut trace, 0)?;
    Representation::for_pair(pair, beta).map_err(|err| match err {
        RepresentError::ProofPathExhausted { reason, .. } => exhausted(reason, &trace),
        other => other,
    })
}

pub(crate) fn check_preconditions<T: Weight>(pair: &WeightedPair<T>) -> Result<(), RepresentError> {
    if pair.is_degenerate() {
        return Err(PairError::Degenerate.into());
    }
    let mut failed = Vec::new();
    if !is_cartier(pair).0 {
        failed.push("not Cartier");
    }
    if !is_regular(pair).0 {
        failed.push("not regular");
    }
    if classify(pair).kind != ClassKind::GeneralType {
        failed.push("not of general type");
    }
    if pair.ambient_dimension() <= pair.codimension() {
        failed.push("N <= k");
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(RepresentError::Precondition(format!("{pair}: {}", failed.join(", "))))
    }
}

pub(crate) fn build<T: Weight>(
    pair: &WeightedPair<T>,
    trace: &mut Vec<String>,
    depth: usize,
) -> Result<Vec<T>, RepresentError> {
    let note = |trace: &mut Vec<String>, msg: String| {
        trace.push(format!("{:width$}{pair}: {msg}", "", width = 2 * depth));
    };
    let index = match pair.nonnegative_index() {
        Some(i) if !i.is_zero() => i,
        _ => {
            note(trace, "index is not positive".into());
            return Err(exhausted("index is not positive", trace));
        }
    };

    if let Some(beta) = absorb_by_unit_weight(pair, &index) {
        note(trace, format!("unit weight takes β = {}", index + T::one()));
        return Ok(beta);
    }

    if let (true, Some((u, l))) = is_linear_cone(pair) {
        note(trace, format!("delete d = a = {}", pair.degrees()[u]));
        let reduced = without(pair, &[u], &[l]);
        if reduced.pair.is_degenerate() {
            return Err(exhausted("deleting the linear cone left no degrees", trace));
        }
        let sub = build(&reduced.pair, trace, depth + 1)?;
        let mut beta = vec![T::one(); pair.weights().len()];
        reduced.lift(sub, &mut beta, |_, b| b);
        return Ok(beta);
    }

    let primes = weight_primes(pair.weights());
    for p in &primes {
        let top = primes_of_max_valuation(pair.weights(), p);
        if pair.degrees().iter().any(|d| !d.is_multiple_of(p)) {
            return Err(exhausted(format!("{p} does not divide every degree"), trace));
        }
        let quotient = divide(pair, p, &top);
        match index_sign(&quotient.pair) {
            Ordering::Equal => {
                note(trace, format!("divide by {p}: Calabi-Yau quotient {}", quotient.pair));
                let beta = (0..pair.weights().len())
                    .map(|l| if top[l] { T::one() } else { p.clone() })
                    .collect();
                return Ok(beta);
            }
            Ordering::Greater => {
                note(trace, format!("divide by {p}: general-type quotient {}", quotient.pair));
                let sub = build(&quotient.pair, trace, depth + 1)?;
                let mut beta = vec![T::zero(); pair.weights().len()];
                quotient.lift(sub, &mut beta, |l, b| if top[l] { b } else { b * p.clone() });
                return Ok(beta);
            }
            Ordering::Less => note(trace, format!("divide by {p}: Fano quotient")),
        }
    }

    squarefree_branch(pair, &primes, trace, depth)
}

/// Every prime quotient is Fano. The weights are then squarefree, built
/// from at least two primes, and every degree is a multiple of their
/// product.
fn squarefree_branch<T: Weight>(
    pair: &WeightedPair<T>,
    primes: &[T],
    trace: &mut Vec<String>,
    depth: usize,
) -> Result<Vec<T>, RepresentError> {
    let note = |trace: &mut Vec<String>, msg: String| {
        trace.push(format!("{:width$}{pair}: {msg}", "", width = 2 * depth));
    };
    let weights = pair.weights();
    let degrees = pair.degrees();
    let k = degrees.len();
    let count = weights.len();

    if primes.len() < 2 {
        return Err(exhausted("a single prime divides every weight", trace));
    }
    if weights
        .iter()
        .any(|a| primes.iter().any(|q| scalar::valuation(a, q) > 1))
    {
        return Err(exhausted("weights are not squarefree", trace));
    }
    let p = primes
        .iter()
        .find(|q| **q != T::small(2))
        .expect("two distinct primes include an odd one")
        .clone();
    let radical = primes.iter().fold(T::one(), |acc, q| acc * q.clone());
    let c = radical.clone() / p.clone();

    let mut multipliers = Vec::with_capacity(k);
    for d in degrees {
        if !d.is_multiple_of(&radical) {
            return Err(exhausted(format!("{radical} does not divide degree {d}"), trace));
        }
        multipliers.push(d.clone() / radical.clone());
    }
    if multipliers.iter().any(|m| !m.is_one()) {
        // solve for ((radical^k), a), then move the surplus onto a_0
        note(trace, format!("replace degrees by {radical}"));
        let normalized = WeightedPair::from_parts(vec![radical.clone(); k], weights.to_vec());
        let mut beta = build(&normalized, trace, depth + 1)?;
        let surplus = multipliers
            .iter()
            .fold(T::zero(), |acc, m| acc + (m.clone() - T::one()) * radical.clone());
        if !surplus.is_multiple_of(&weights[0]) {
            return Err(exhausted("surplus is not a multiple of a_0", trace));
        }
        beta[0] = beta[0].clone() + surplus / weights[0].clone();
        return Ok(beta);
    }

    let at_p: Vec<usize> = (0..count).filter(|&l| weights[l] == p).collect();
    let at_c: Vec<usize> = (0..count).filter(|&l| weights[l] == c).collect();
    let (e, f) = (at_p.len(), at_c.len());
    note(trace, format!("p = {p}, c = {c}, e = {e}, f = {f}"));
    let mut beta = vec![T::zero(); count];
    let one = T::one;

    if f == k {
        let r = count - k;
        if e != r {
            return Err(exhausted(format!("expected weights (c^{k}, p^{r})"), trace));
        }
        if r < 2 || r > k {
            return Err(exhausted(format!("r = {r} outside 2..=k"), trace));
        }
        let p_minus_1 = p.clone() - one();
        match r {
            2 => {
                // c-weights 1, p-1, p, ..., p; p-weights 1, c-1
                beta[at_c[0]] = one();
                beta[at_c[1]] = p_minus_1;
                for &l in &at_c[2..] {
                    beta[l] = p.clone();
                }
                beta[at_p[0]] = one();
                beta[at_p[1]] = c.clone() - one();
            }
            3 if c > T::small(2) => {
                beta[at_c[0]] = one();
                beta[at_c[1]] = p_minus_1;
                for &l in &at_c[2..] {
                    beta[l] = p.clone();
                }
                beta[at_p[0]] = one();
                beta[at_p[1]] = one();
                beta[at_p[2]] = c.clone() - T::small(2);
            }
            3 => {
                // c = 2, k >= 3
                let kk = T::small(k as u64);
                beta[at_c[0]] = one() + T::small(k as u64 - 2) * p.clone() - kk;
                for &l in &at_c[1..] {
                    beta[l] = one();
                }
                beta[at_p[0]] = T::small(2);
                beta[at_p[1]] = one();
                beta[at_p[2]] = one();
            }
            _ => {
                note(trace, "split off (pc, pc; c, c, p, p)".into());
                let reduced = without(pair, &[0, 1], &[at_c[0], at_c[1], at_p[0], at_p[1]]);
                let sub = build(&reduced.pair, trace, depth + 1)?;
                reduced.lift(sub, &mut beta, |_, b| b);
                beta[at_c[0]] = one();
                beta[at_c[1]] = p_minus_1;
                beta[at_p[0]] = one();
                beta[at_p[1]] = c.clone() - one();
            }
        }
        return Ok(beta);
    }

    if f < 2 || e < 2 {
        return Err(exhausted(format!("f = {f} < k = {k} needs e >= 2 and f >= 2"), trace));
    }
    beta[at_p[0]] = one();
    beta[at_p[1]] = c.clone() - one();
    beta[at_c[0]] = one();
    beta[at_c[1]] = p.clone() - one();
    let dropped = [at_p[0], at_p[1], at_c[0], at_c[1]];
    let rest: Vec<usize> = (0..count).filter(|l| !dropped.contains(l)).collect();
    let share = |value: &T, l: usize| -> Option<T> {
        value
            .is_multiple_of(&weights[l])
            .then(|| value.clone() / weights[l].clone())
    };

    if count == k + 2 {
        for &l in &rest {
            beta[l] = share(&radical, l).ok_or_else(|| exhausted("weight does not divide pc", trace))?;
        }
        return Ok(beta);
    }
    if count == k + 3 {
        if k == 2 {
            return Err(exhausted("N = k + 2 with k = 2 is not regular", trace));
        }
        let spare = (p.clone() - one()) * c.clone();
        let x = rest.iter().copied().find(|&l| share(&c, l).is_some());
        let y = x.and_then(|x| rest.iter().copied().find(|&l| l != x && share(&spare, l).is_some()));
        let (Some(x), Some(y)) = (x, y) else {
            return Err(exhausted("no weights dividing c and (p-1)c", trace));
        };
        for &l in &rest {
            beta[l] = share(&radical, l).ok_or_else(|| exhausted("weight does not divide pc", trace))?;
        }
        beta[x] = share(&c, x).expect("checked");
        beta[y] = share(&spare, y).expect("checked");
        return Ok(beta);
    }

    note(trace, "split off (pc, pc; p, p, c, c)".into());
    let reduced = without(pair, &[0, 1], &dropped);
    let sub = build(&reduced.pair, trace, depth + 1)?;
    reduced.lift(sub, &mut beta, |_, b| b);
    Ok(beta)
}

/// Distinct primes dividing at least one weight, ascending.
pub(crate) fn weight_primes<T: Weight>(weights: &[T]) -> Vec<T> {
    let mut primes: Vec<T> = weights.iter().flat_map(scalar::prime_factors).collect();
    primes.sort();
    primes.dedup();
    primes
}

fn primes_of_max_valuation<T: Weight>(weights: &[T], p: &T) -> Vec<bool> {
    let valuations: Vec<u32> = weights.iter().map(|a| scalar::valuation(a, p)).collect();
    let top = *valuations.iter().max().unwrap_or(&0);
    valuations.into_iter().map(|v| v == top && v > 0).collect()
}

fn divide<T: Weight>(pair: &WeightedPair<T>, p: &T, top: &[bool]) -> Reduced<T> {
    let degrees = pair.degrees().iter().map(|d| d.clone() / p.clone()).collect();
    let weights = pair
        .weights()
        .iter()
        .enumerate()
        .map(|(l, a)| (if top[l] { a.clone() / p.clone() } else { a.clone() }, l))
        .collect();
    Reduced::new(degrees, weights)
}
