//! Exhaustive scan of regular pairs within bounds, recording every
//! representation and Hodge computation and flagging any pair that
//! contradicts a proven statement.

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ConstructError, RepresentError};
use crate::hodge::{h0n, hypersurface_middle_hodge, SeriesBudget};
use crate::json;
use crate::pairs::{check_pst_bound, classify, is_cartier, is_linear_cone, is_regular, normalize, ClassKind};
use crate::represent::{
    constructive_representation_cartier, find_positive_representation, representation_codim_le2, ResidueBudget,
};
use crate::verify;
use crate::SmallPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanBounds {
    pub max_k: usize,
    pub max_n: usize,
    pub max_degree_sum: u64,
    pub max_weight: u64,
    pub include_linear_cones: bool,
    /// Stop enumerating after this many pairs and mark the scan truncated.
    pub max_pairs: Option<usize>,
}

impl ScanBounds {
    pub fn new(max_k: usize, max_n: usize, max_degree_sum: u64, max_weight: u64) -> Self {
        Self {
            max_k,
            max_n,
            max_degree_sum,
            max_weight,
            include_linear_cones: false,
            max_pairs: None,
        }
    }
}

/// Result of running one constructive algorithm on a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ConstructorOutcome {
    NotApplicable {
        reason: String,
    },
    Found {
        #[serde(with = "json::decimal_vec")]
        beta: Vec<u64>,
    },
    Failed {
        error: String,
    },
}

impl ConstructorOutcome {
    fn from_result(result: Result<crate::represent::Representation<u64>, RepresentError>) -> Self {
        match result {
            Ok(rep) if rep.verify() => Self::Found { beta: rep.coefficients },
            Ok(rep) => Self::Failed {
                error: format!("unverified β {:?}", rep.coefficients),
            },
            Err(RepresentError::Precondition(reason)) => Self::NotApplicable { reason },
            Err(err) => Self::Failed { error: err.to_string() },
        }
    }

    pub fn found(&self) -> bool {
        matches!(self, Self::Found { .. })
    }

    pub fn failed(&self) -> bool {
        matches!(self, Self::Failed { .. })
    }
}

/// Everything computed for one pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub pair: SmallPair,
    pub kind: ClassKind,
    #[serde(with = "json::decimal")]
    pub index: i64,
    pub regular: bool,
    pub cartier: bool,
    pub linear_cone: bool,
    /// Positive `β` from the residue oracle.
    #[serde(with = "json::decimal_opt_vec")]
    pub oracle: Option<Vec<u64>>,
    pub brute_force_representable: bool,
    pub cartier_constructor: ConstructorOutcome,
    pub codim2_constructor: ConstructorOutcome,
    #[serde(with = "json::decimal")]
    pub h0n: BigUint,
    /// Primitive middle Hodge numbers, for Cartier hypersurfaces.
    #[serde(with = "json::decimal_opt_vec")]
    pub middle_hodge: Option<Vec<BigUint>>,
    /// Names of the statements this pair contradicts; empty when conforming.
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub bounds: Option<ScanBounds>,
    pub pairs: usize,
    pub truncated: bool,
    pub fano: usize,
    pub calabi_yau: usize,
    pub general_type: usize,
    pub cartier: usize,
    /// Cartier general-type pairs with `N > k`.
    pub cartier_theorem_cases: usize,
    pub cartier_constructor_found: usize,
    /// General-type pairs with `k <= 2` and `N > k`.
    pub codim_le2_cases: usize,
    pub codim2_constructor_found: usize,
    pub codim2_missing_certificates: usize,
    pub violations: BTreeMap<String, usize>,
    /// At most [`MAX_LISTED`] violating pairs, in scan order.
    pub violating_pairs: Vec<String>,
}

impl ScanSummary {
    pub fn total_violations(&self) -> usize {
        self.violations.values().sum()
    }
}

pub const MAX_LISTED: usize = 100;

pub struct ScanOutcome {
    pub records: Vec<ScanRecord>,
    pub summary: ScanSummary,
}

struct Enumerator<'a> {
    bounds: &'a ScanBounds,
    degrees: Vec<u64>,
    /// Number of degrees divisible by `δ`, indexed by `δ`.
    degree_counts: Vec<usize>,
    allowed: Vec<u64>,
    out: &'a mut Vec<SmallPair>,
    stopped: bool,
}

impl Enumerator<'_> {
    fn full(&mut self) -> bool {
        if self.bounds.max_pairs.is_some_and(|cap| self.out.len() >= cap) {
            self.stopped = true;
        }
        self.stopped
    }

    /// Extends `weights` by values from `allowed[from..]`, keeping every
    /// divisor count within the degree counts.
    fn weights(&mut self, weights: &mut Vec<u64>, counts: &mut [usize], from: usize) {
        let k = self.degrees.len();
        if weights.len() >= (k + 1).max(2) {
            if self.full() {
                return;
            }
            self.out
                .push(SmallPair::new(self.degrees.clone(), weights.clone()).expect("positive entries"));
        }
        if weights.len() == self.bounds.max_n + 1 {
            return;
        }
        for i in from..self.allowed.len() {
            let a = self.allowed[i];
            let divisors: Vec<usize> = (2..=a as usize).filter(|d| (a as usize).is_multiple_of(*d)).collect();
            if divisors.iter().any(|&d| counts[d] + 1 > self.degree_counts[d]) {
                continue;
            }
            for &d in &divisors {
                counts[d] += 1;
            }
            weights.push(a);
            self.weights(weights, counts, i);
            weights.pop();
            for &d in &divisors {
                counts[d] -= 1;
            }
            if self.stopped {
                return;
            }
        }
    }
}

fn degree_tuples(bounds: &ScanBounds) -> Vec<Vec<u64>> {
    fn extend(prefix: &mut Vec<u64>, left: u64, k: usize, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        let start = prefix.last().copied().unwrap_or(1);
        let slots = (k - prefix.len()) as u64;
        // the remaining degrees are all at least d
        let mut d = start;
        while d * slots <= left {
            prefix.push(d);
            extend(prefix, left - d, k, out);
            prefix.pop();
            d += 1;
        }
    }
    let mut out = Vec::new();
    for k in 1..=bounds.max_k {
        extend(&mut Vec::with_capacity(k), bounds.max_degree_sum, k, &mut out);
    }
    out
}

/// Every regular pair within the bounds, in canonical form, each once.
pub fn enumerate_regular_pairs(bounds: &ScanBounds) -> (Vec<SmallPair>, bool) {
    let mut out = Vec::new();
    let mut truncated = false;
    let width = bounds.max_weight as usize + 1;
    for degrees in degree_tuples(bounds) {
        let k = degrees.len();
        if k > bounds.max_n {
            continue;
        }
        let mut degree_counts = vec![0usize; width];
        for (d, slot) in degree_counts.iter_mut().enumerate().skip(2) {
            *slot = degrees.iter().filter(|&&x| x % d as u64 == 0).count();
        }
        // a weight a > 1 needs a degree divisible by a
        let allowed: Vec<u64> = (1..=bounds.max_weight)
            .filter(|&a| a == 1 || degree_counts[a as usize] > 0)
            .filter(|a| bounds.include_linear_cones || !degrees.contains(a))
            .collect();
        let mut e = Enumerator {
            bounds,
            degrees,
            degree_counts,
            allowed,
            out: &mut out,
            stopped: false,
        };
        e.weights(&mut Vec::new(), &mut vec![0; width], 0);
        if e.stopped {
            truncated = true;
            break;
        }
    }
    (out, truncated)
}

/// Weights minus one copy of each degree, if the degrees fit inside.
fn weights_beyond_degrees(pair: &SmallPair) -> Option<Vec<u64>> {
    let mut rest = pair.weights().to_vec();
    for d in pair.degrees() {
        let pos = rest.iter().position(|a| a == d)?;
        rest.remove(pos);
    }
    Some(rest)
}

pub fn scan_pair(pair: &SmallPair) -> ScanRecord {
    let residue = ResidueBudget::default();
    let series = SeriesBudget::default();
    let class = classify(pair);
    let index = i64::try_from(&class.index).expect("scan indices are small");
    let regular = is_regular(pair).0;
    let cartier = is_cartier(pair).0;
    let linear_cone = is_linear_cone(pair).0;
    let k = pair.codimension();
    let big_n = pair.ambient_dimension();
    let general = class.kind == ClassKind::GeneralType;

    let oracle = find_positive_representation(pair, residue)
        .expect("scan pairs fit the residue budget")
        .map(|r| r.coefficients);
    let brute = verify::positive_representable(pair);
    let h = h0n(pair, series).expect("scan pairs fit the series budget");

    let cartier_constructor = if cartier && regular && general && big_n > k {
        ConstructorOutcome::from_result(constructive_representation_cartier(pair))
    } else {
        ConstructorOutcome::NotApplicable {
            reason: "needs a Cartier regular general-type pair with N > k".into(),
        }
    };
    let codim2_constructor = if k <= 2 && regular && general && big_n > k {
        ConstructorOutcome::from_result(representation_codim_le2(pair, residue))
    } else {
        ConstructorOutcome::NotApplicable {
            reason: "needs a regular general-type pair with k <= 2 and N > k".into(),
        }
    };
    let middle_hodge = (k == 1 && cartier).then(|| {
        hypersurface_middle_hodge(pair, series)
            .expect("Cartier hypersurfaces are supported")
            .0
    });

    let mut violations = Vec::new();
    let mut flag = |name: &str, bad: bool| {
        if bad {
            violations.push(name.to_string());
        }
    };
    flag("regularity_subsets", regular != verify::regular_by_subsets(pair));
    flag("oracle_vs_brute_force", oracle.is_some() != brute);
    // in dimension 0 the series counts the points' ring, where a monomial
    // of degree i can lie in the ideal
    flag(
        "bridge_h0n_representation",
        big_n > k && h.is_zero() == oracle.is_some(),
    );
    flag("calabi_yau_h0n", class.kind == ClassKind::CalabiYau && !h.is_one());
    flag("fano_h0n", class.kind == ClassKind::Fano && !h.is_zero());
    if cartier && regular && general && big_n > k {
        flag("cartier_theorem_oracle", oracle.is_none());
        flag("cartier_theorem_constructor", !cartier_constructor.found());
    }
    if k <= 2 && regular && general && big_n > k {
        flag("codim_le2_h0n", h.is_zero());
        flag("codim2_constructor_failed", codim2_constructor.failed());
        flag(
            "codim2_constructor_disagrees",
            codim2_constructor.found() && oracle.is_none(),
        );
        flag("codim1_constructor_missing", k == 1 && !codim2_constructor.found());
    }
    if regular && !general && !linear_cone {
        let pst = check_pst_bound(pair);
        flag("pst_bound", !pst.is_ok_and(|o| o.holds));
    }
    if regular && big_n >= k && !linear_cone && pair.weights().iter().all(|&a| a > 1) {
        flag("no_unit_weight_general_type", !general);
    }
    if regular {
        if let Some(rest) = weights_beyond_degrees(pair) {
            flag("regular_linear_cone", rest.iter().any(|&a| a != 1));
        }
    }
    if linear_cone {
        let reduced = normalize(pair);
        flag("normalize_index", reduced.index() != pair.index());
        flag("normalize_regularity", regular && !is_regular(&reduced).0);
    }
    if let Some(v) = &middle_hodge {
        let symmetric = v.iter().eq(v.iter().rev());
        let ends = v.first().is_none_or(|x| *x == h);
        flag("middle_hodge_symmetry", !symmetric);
        flag("middle_hodge_h0n", !ends);
    }

    ScanRecord {
        pair: pair.clone(),
        kind: class.kind,
        index,
        regular,
        cartier,
        linear_cone,
        oracle,
        brute_force_representable: brute,
        cartier_constructor,
        codim2_constructor,
        h0n: h,
        middle_hodge,
        violations,
    }
}

/// Scans every regular pair in the bounds. `jobs` caps the worker count;
/// records come back in canonical pair order whatever the scheduling.
pub fn scan_theorem(bounds: &ScanBounds, jobs: Option<usize>) -> Result<ScanOutcome, ConstructError> {
    let (pairs, truncated) = enumerate_regular_pairs(bounds);
    let run = || pairs.par_iter().map(scan_pair).collect::<Vec<_>>();
    let mut records = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| ConstructError::Precondition(format!("cannot start {n} workers: {e}")))?
            .install(run),
        None => run(),
    };
    records.sort_by(|a, b| a.pair.cmp(&b.pair));
    let mut summary = summarize(&records);
    summary.bounds = Some(*bounds);
    summary.truncated = truncated;
    Ok(ScanOutcome { records, summary })
}

pub fn summarize(records: &[ScanRecord]) -> ScanSummary {
    let mut s = ScanSummary {
        pairs: records.len(),
        ..ScanSummary::default()
    };
    for r in records {
        match r.kind {
            ClassKind::Fano => s.fano += 1,
            ClassKind::CalabiYau => s.calabi_yau += 1,
            ClassKind::GeneralType => s.general_type += 1,
        }
        let k = r.pair.codimension();
        let big_n = r.pair.ambient_dimension();
        let general = r.kind == ClassKind::GeneralType;
        s.cartier += usize::from(r.cartier);
        if r.cartier && r.regular && general && big_n > k {
            s.cartier_theorem_cases += 1;
            s.cartier_constructor_found += usize::from(r.cartier_constructor.found());
        }
        if k <= 2 && r.regular && general && big_n > k {
            s.codim_le2_cases += 1;
            s.codim2_constructor_found += usize::from(r.codim2_constructor.found());
            if matches!(r.codim2_constructor, ConstructorOutcome::NotApplicable { .. }) {
                s.codim2_missing_certificates += 1;
            }
        }
        for v in &r.violations {
            *s.violations.entry(v.clone()).or_default() += 1;
        }
        if !r.violations.is_empty() && s.violating_pairs.len() < MAX_LISTED {
            s.violating_pairs
                .push(format!("{}: {}", r.pair, r.violations.join(", ")));
        }
    }
    s
}

/// One JSON document per line.
pub fn write_jsonl<W: Write>(records: &[ScanRecord], mut out: W) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: &[u64], a: &[u64]) -> SmallPair {
        SmallPair::new(d.to_vec(), a.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_is_regular_and_duplicate_free() {
        let bounds = ScanBounds::new(2, 4, 16, 8);
        let (pairs, truncated) = enumerate_regular_pairs(&bounds);
        assert!(!truncated);
        let mut sorted = pairs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), pairs.len());
        assert!(pairs.iter().all(|q| is_regular(q).0 && !is_linear_cone(q).0));
        assert!(pairs.contains(&p(&[6], &[2, 3])));
        assert!(pairs.contains(&p(&[6, 6], &[2, 2, 3, 3])));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let bounds = ScanBounds {
            include_linear_cones: true,
            ..ScanBounds::new(2, 3, 10, 6)
        };
        let (pairs, _) = enumerate_regular_pairs(&bounds);
        let mut expected = Vec::new();
        for d1 in 1..=10u64 {
            for d2 in std::iter::once(0).chain(d1..=10 - d1) {
                let degrees: Vec<u64> = if d2 == 0 { vec![d1] } else { vec![d1, d2] };
                let k = degrees.len();
                for len in (k + 1).max(2)..=4 {
                    let mut w = vec![1u64; len];
                    loop {
                        let q = p(&degrees, &w);
                        if verify::regular_by_subsets(&q) {
                            expected.push(q);
                        }
                        // next nondecreasing tuple in 1..=6
                        let Some(i) = (0..len).rev().find(|&i| w[i] < 6) else {
                            break;
                        };
                        let v = w[i] + 1;
                        for x in &mut w[i..] {
                            *x = v;
                        }
                    }
                }
            }
        }
        let mut got = pairs;
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn truncation_is_reported() {
        let bounds = ScanBounds {
            max_pairs: Some(5),
            ..ScanBounds::new(1, 4, 12, 12)
        };
        let out = scan_theorem(&bounds, Some(1)).unwrap();
        assert!(out.summary.truncated);
        assert_eq!(out.records.len(), 5);
    }

    #[test]
    fn point_pair_is_not_a_violation() {
        let r = scan_pair(&p(&[6], &[2, 3]));
        assert!(r.regular && r.cartier && r.kind == ClassKind::GeneralType);
        assert_eq!(r.oracle, None);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn small_scan_has_no_violations() {
        let out = scan_theorem(&ScanBounds::new(2, 4, 24, 12), None).unwrap();
        assert!(out.summary.pairs > 0);
        assert_eq!(out.summary.total_violations(), 0, "{:?}", out.summary.violating_pairs);
    }

    #[test]
    fn records_round_trip() {
        let r = scan_pair(&p(&[6, 6], &[2, 2, 3, 3]));
        let text = serde_json::to_string(&r).unwrap();
        let back: ScanRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
