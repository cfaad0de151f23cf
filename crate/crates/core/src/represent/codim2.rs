//! Positive representations for regular pairs of general type in
//! codimension one and two, without the Cartier assumption.
//!
//! Codimension one reduces to the Cartier builder: with one degree,
//! regularity forces every weight to divide it. In codimension two the
//! recursion needs nonnegative representations `d_1 = Σ γ_l a_l` and
//! `d_2 = Σ μ_l a_l`; these are precondition inputs, found with the residue
//! oracle and rejected when absent.

use std::cmp::Ordering;

use super::cartier;
use super::{
    absorb_by_unit_weight, exhausted, find_nonneg_representation, two_coin_representation, without, Reduced,
    Representation, ResidueBudget,
};
use crate::error::{PairError, RepresentError};
use crate::pairs::{classify, index_sign, is_linear_cone, is_regular, ClassKind, WeightedPair};
use crate::scalar::Weight;

pub fn representation_codim_le2<T: Weight>(
    pair: &WeightedPair<T>,
    budget: ResidueBudget,
) -> Result<Representation<T>, RepresentError> {
    if pair.is_degenerate() {
        return Err(PairError::Degenerate.into());
    }
    let k = pair.codimension();
    let n = pair.ambient_dimension();
    let mut failed = Vec::new();
    if k > 2 {
        failed.push("codimension above 2".to_string());
    }
    if n <= k {
        failed.push(format!("N = {n} must exceed k = {k}"));
    }
    if !is_regular(pair).0 {
        failed.push("not regular".into());
    }
    if classify(pair).kind != ClassKind::GeneralType {
        failed.push("not of general type".into());
    }
    if !failed.is_empty() {
        return Err(RepresentError::Precondition(format!("{pair}: {}", failed.join(", "))));
    }
    let mut trace = Vec::new();
    let beta = if k == 1 {
        cartier::check_preconditions(pair)?;
        cartier::build(pair, &mut trace, 0)?
    } else {
        let Some(certificates) = certificates(pair, budget)? else {
            return Err(RepresentError::Precondition(format!(
                "{pair}: a degree has no nonnegative representation by the weights"
            )));
        };
        build(pair, certificates, budget, &mut trace, 0)?
    };
    Representation::for_pair(pair, beta).map_err(|err| match err {
        RepresentError::ProofPathExhausted { reason, .. } => exhausted(reason, &trace),
        other => other,
    })
}

/// Nonnegative `(γ, μ)` with `d_1 = Σ γ_l a_l` and `d_2 = Σ μ_l a_l`.
pub(crate) fn certificates<T: Weight>(
    pair: &WeightedPair<T>,
    budget: ResidueBudget,
) -> Result<Option<[Vec<T>; 2]>, RepresentError> {
    let [d1, d2] = [&pair.degrees()[0], &pair.degrees()[1]];
    let gamma = find_nonneg_representation(d1, pair.weights(), budget)?;
    let mu = find_nonneg_representation(d2, pair.weights(), budget)?;
    Ok(gamma.zip(mu).map(|(g, m)| [g.coefficients, m.coefficients]))
}

/// Runs the Cartier builder on a codimension-one piece, which must satisfy
/// its preconditions.
fn hypersurface<T: Weight>(
    reduced: &Reduced<T>,
    trace: &mut Vec<String>,
    depth: usize,
) -> Result<Vec<T>, RepresentError> {
    if let Err(err) = cartier::check_preconditions(&reduced.pair) {
        return Err(exhausted(format!("codimension-one piece rejected: {err}"), trace));
    }
    cartier::build(&reduced.pair, trace, depth + 1)
}

fn build<T: Weight>(
    pair: &WeightedPair<T>,
    certificates: [Vec<T>; 2],
    budget: ResidueBudget,
    trace: &mut Vec<String>,
    depth: usize,
) -> Result<Vec<T>, RepresentError> {
    let note = |trace: &mut Vec<String>, msg: String| {
        trace.push(format!("{:width$}{pair}: {msg}", "", width = 2 * depth));
    };
    let weights = pair.weights();
    let degrees = pair.degrees();
    let count = weights.len();
    let index = match pair.nonnegative_index() {
        Some(i) if !i.is_zero() => i,
        _ => return Err(exhausted("index is not positive", trace)),
    };

    if let Some(beta) = absorb_by_unit_weight(pair, &index) {
        note(trace, format!("unit weight takes β = {}", index + T::one()));
        return Ok(beta);
    }

    if let (true, Some((u, l))) = is_linear_cone(pair) {
        note(trace, format!("delete d = a = {}", degrees[u]));
        let reduced = without(pair, &[u], &[l]);
        let sub = hypersurface(&reduced, trace, depth)?;
        let mut beta = vec![T::one(); count];
        reduced.lift(sub, &mut beta, |_, b| b);
        return Ok(beta);
    }

    if let Some((p, l, m)) = shared_prime(weights) {
        return shared_prime_step(pair, &p, l, m, budget, trace, depth);
    }

    // pairwise coprime weights
    let [d1, d2] = [&degrees[0], &degrees[1]];
    let (first, second): (Vec<usize>, Vec<usize>) = (0..count).partition(|&l| d1.is_multiple_of(&weights[l]));
    if second.iter().any(|&l| !d2.is_multiple_of(&weights[l])) {
        return Err(exhausted("a weight divides neither degree", trace));
    }
    let [gamma, mu] = certificates;
    let piece = |degree: &T, ls: &[usize]| {
        Reduced::new(
            vec![degree.clone()],
            ls.iter().map(|&l| (weights[l].clone(), l)).collect(),
        )
    };
    let mut beta = vec![T::zero(); count];

    // one degree divisible by every weight
    let whole = if second.is_empty() {
        Some((d1, mu))
    } else if first.is_empty() {
        Some((d2, gamma))
    } else {
        None
    };
    if let Some((degree, other)) = whole {
        note(trace, format!("every weight divides {degree}"));
        let all: Vec<usize> = (0..count).collect();
        let reduced = piece(degree, &all);
        let sub = hypersurface(&reduced, trace, depth)?;
        reduced.lift(sub, &mut beta, |l, b| b + other[l].clone());
        return Ok(beta);
    }

    // orient so that `small` is the side dividing `small_degree`
    let (small, small_degree, large, large_degree) = if first.len() <= second.len() {
        (&first, d1, &second, d2)
    } else {
        (&second, d2, &first, d1)
    };
    match small.len() {
        1 => {
            let l = small[0];
            note(
                trace,
                format!("{small_degree} is a multiple of the single weight {}", weights[l]),
            );
            beta[l] = small_degree.clone() / weights[l].clone();
            let reduced = piece(large_degree, large);
            let sub = hypersurface(&reduced, trace, depth)?;
            reduced.lift(sub, &mut beta, |_, b| b);
        }
        2 => {
            let (x, y) = (small[0], small[1]);
            let large_sum = large.iter().fold(T::zero(), |acc, &l| acc + weights[l].clone());
            let small_sum = weights[x].clone() + weights[y].clone();
            let (Some(a), Some(b)) = (
                small_degree.checked_minus(&small_sum),
                large_degree.checked_minus(&large_sum),
            ) else {
                return Err(exhausted("two-coin remainder is negative", trace));
            };
            let target = a + b;
            note(
                trace,
                format!("two coins {} and {} for {target}", weights[x], weights[y]),
            );
            let Some((bx, by)) = two_coin_representation(&target, &weights[x], &weights[y])? else {
                return Err(exhausted("two-coin target is not representable", trace));
            };
            beta = vec![T::one(); count];
            beta[x] = bx + T::one();
            beta[y] = by + T::one();
        }
        _ => {
            note(trace, "split weights by the degree they divide".into());
            for (degree, side) in [(small_degree, small), (large_degree, large)] {
                let reduced = piece(degree, side);
                let sub = hypersurface(&reduced, trace, depth)?;
                reduced.lift(sub, &mut beta, |_, b| b);
            }
        }
    }
    Ok(beta)
}

/// Smallest prime dividing two weights, with the two lowest such indices.
fn shared_prime<T: Weight>(weights: &[T]) -> Option<(T, usize, usize)> {
    let primes = cartier::weight_primes(weights);
    primes.into_iter().find_map(|p| {
        let mut hits = (0..weights.len()).filter(|&l| weights[l].is_multiple_of(&p));
        let l = hits.next()?;
        let m = hits.next()?;
        Some((p, l, m))
    })
}

#[allow(clippy::too_many_arguments)]
fn shared_prime_step<T: Weight>(
    pair: &WeightedPair<T>,
    p: &T,
    l: usize,
    m: usize,
    budget: ResidueBudget,
    trace: &mut Vec<String>,
    depth: usize,
) -> Result<Vec<T>, RepresentError> {
    let note = |trace: &mut Vec<String>, msg: String| {
        trace.push(format!("{:width$}{pair}: {msg}", "", width = 2 * depth));
    };
    let weights = pair.weights();
    let degrees = pair.degrees();
    let count = weights.len();
    if degrees.iter().any(|d| !d.is_multiple_of(p)) {
        return Err(exhausted(
            format!("{p} divides two weights but not both degrees"),
            trace,
        ));
    }
    let divided = |j: usize| j == l || j == m;
    let quotient = Reduced::new(
        degrees.iter().map(|d| d.clone() / p.clone()).collect(),
        (0..count)
            .map(|j| {
                let a = weights[j].clone();
                (if divided(j) { a / p.clone() } else { a }, j)
            })
            .collect(),
    );
    match index_sign(&quotient.pair) {
        Ordering::Equal => {
            note(trace, format!("divide by {p}: Calabi-Yau quotient"));
            Ok((0..count)
                .map(|j| if divided(j) { T::one() } else { p.clone() })
                .collect())
        }
        Ordering::Greater => {
            note(trace, format!("divide by {p}: general-type quotient {}", quotient.pair));
            let Some(sub_certificates) = certificates(&quotient.pair, budget)? else {
                return Err(exhausted(
                    format!("quotient {} lacks degree certificates", quotient.pair),
                    trace,
                ));
            };
            let sub = build(&quotient.pair, sub_certificates, budget, trace, depth + 1)?;
            let mut beta = vec![T::zero(); count];
            quotient.lift(sub, &mut beta, |j, b| if divided(j) { b } else { b * p.clone() });
            Ok(beta)
        }
        Ordering::Less => {
            note(trace, format!("divide by {p}: Fano quotient"));
            fano_shapes(pair, p, trace)
        }
    }
}

/// The two shapes left when the prime quotient is Fano:
/// `((pα, pγ), (α, γ, p, p))` and `((αp, 6p), (α, 2, 3, p, p))`.
fn fano_shapes<T: Weight>(pair: &WeightedPair<T>, p: &T, trace: &mut [String]) -> Result<Vec<T>, RepresentError> {
    let weights = pair.weights();
    let degrees = pair.degrees();
    let count = weights.len();
    let reduced: Vec<T> = degrees.iter().map(|d| d.clone() / p.clone()).collect();
    let take = |pool: &mut Vec<Option<usize>>, value: &T| -> Option<usize> {
        let slot = pool.iter_mut().find(|s| s.is_some_and(|l| weights[l] == *value))?;
        slot.take()
    };

    if count == 4 {
        let mut pool: Vec<Option<usize>> = (0..count).map(Some).collect();
        let alpha = take(&mut pool, &reduced[0]);
        let gamma = take(&mut pool, &reduced[1]);
        let p0 = take(&mut pool, p);
        let p1 = take(&mut pool, p);
        if let (Some(alpha), Some(gamma), Some(p0), Some(_p1)) = (alpha, gamma, p0, p1) {
            let (av, gv) = (weights[alpha].clone(), weights[gamma].clone());
            let frob = |x: &T| (p.clone() * x.clone()).checked_minus(&(x.clone() + p.clone()));
            let (Some(fa), Some(fg)) = (frob(&av), frob(&gv)) else {
                return Err(exhausted("pα - α - p is negative", trace));
            };
            if !av.gcd(p).is_one() {
                return Err(exhausted("α and p are not coprime", trace));
            }
            let Some((b0, b2)) = two_coin_representation(&(fa + fg), &av, p)? else {
                return Err(exhausted("two-coin target is not representable", trace));
            };
            let mut beta = vec![T::one(); count];
            beta[alpha] = b0 + T::one();
            beta[p0] = b2 + T::one();
            return Ok(beta);
        }
    }

    if count == 5 {
        let six = T::small(6);
        for u in 0..2 {
            if reduced[u] != six {
                continue;
            }
            let alpha_value = &reduced[1 - u];
            let mut pool: Vec<Option<usize>> = (0..count).map(Some).collect();
            let slots = [
                take(&mut pool, alpha_value),
                take(&mut pool, &T::small(2)),
                take(&mut pool, &T::small(3)),
                take(&mut pool, p),
                take(&mut pool, p),
            ];
            if let [Some(alpha), Some(two), Some(three), Some(p0), Some(p1)] = slots {
                if *p < T::small(5) || p.is_even() {
                    return Err(exhausted("p must be an odd prime above 3", trace));
                }
                let mut beta = vec![T::zero(); count];
                beta[alpha] = p.clone();
                beta[two] = (p.clone() - T::small(3)) / T::small(2);
                beta[three] = T::one();
                beta[p0] = T::one();
                beta[p1] = T::small(4);
                return Ok(beta);
            }
        }
    }

    Err(exhausted("Fano quotient with no recognised shape", trace))
}
