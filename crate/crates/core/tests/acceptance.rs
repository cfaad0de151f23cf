//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line. Run with `--nocapture` to see the lines.

use std::sync::OnceLock;

use wci::construct::ScanOutcome;
use wci::reproduce::{self, CriterionResult};

fn scan() -> &'static ScanOutcome {
    static SCAN: OnceLock<ScanOutcome> = OnceLock::new();
    SCAN.get_or_init(|| reproduce::acceptance_scan(None).expect("acceptance scan"))
}

fn report(result: CriterionResult) {
    println!("{}", result.line());
    assert!(result.passed, "{}", result.line());
}

#[test]
fn criterion_01_cartier_theorem_scan() {
    report(reproduce::criterion_01_theorem_scan(scan()));
}

#[test]
fn criterion_02_counterexamples() {
    report(reproduce::criterion_02_counterexamples());
}

#[test]
fn criterion_03_calabi_yau_and_fano() {
    report(reproduce::criterion_03_calabi_yau(scan()));
}

#[test]
fn criterion_04_quintic_hodge() {
    report(reproduce::criterion_04_quintic());
}

#[test]
fn criterion_05_point_family() {
    report(reproduce::criterion_05_point_family());
}

#[test]
fn criterion_06_two_coins() {
    report(reproduce::criterion_06_sylvester());
}

#[test]
fn criterion_07_prime_lemmas() {
    report(reproduce::criterion_07_prime_lemmas());
}

#[test]
fn criterion_08_delta() {
    report(reproduce::criterion_08_delta());
}

#[test]
fn criterion_09_bridge() {
    report(reproduce::criterion_09_bridge(scan()));
}

#[test]
fn criterion_10_codim2_constructor() {
    report(reproduce::criterion_10_codim2(scan()));
}
