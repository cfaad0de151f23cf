//! Explicit families and the conformance scan.

mod counterexample;
mod point_family;
mod scan;

use serde::{Deserialize, Serialize};

pub use counterexample::{build_counterexample, CounterexampleReport};
pub use point_family::{build_point_family, PointFamilyReport};
pub use scan::{
    enumerate_regular_pairs, scan_pair, scan_theorem, summarize, write_jsonl, ConstructorOutcome, ScanBounds,
    ScanOutcome, ScanRecord, ScanSummary, MAX_LISTED,
};

/// A named arithmetic check with a human-readable witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Check {
    pub(crate) fn new(name: &str, holds: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            holds,
            detail,
        }
    }
}
