//! Acceptance suite: every criterion as its own test, printing one line per
//! criterion (run with `--nocapture` to see them all).

use zariski_core::acceptance::{run_one, CriterionResult};

fn check(id: usize) {
    let CriterionResult {
        name,
        passed,
        details,
        ..
    } = run_one(id).expect("criterion id exists");
    println!(
        "criterion {id:>2} [{}] {name}: {details}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {id} ({name}) failed: {details}");
}

#[test]
fn criterion_01_chamber_weights() {
    check(1);
}

#[test]
fn criterion_02_combinatorics_listings() {
    check(2);
}

#[test]
fn criterion_03_automorphisms_and_stability() {
    check(3);
}

#[test]
fn criterion_04_pair_certificates() {
    check(4);
}

#[test]
fn criterion_05_invariant_relation() {
    check(5);
}

#[test]
fn criterion_06_wiring_invariants() {
    check(6);
}

#[test]
fn criterion_07_moduli() {
    check(7);
}

#[test]
fn criterion_08_gluing() {
    check(8);
}

#[test]
fn criterion_09_covering_classification() {
    check(9);
}

#[test]
fn criterion_10_depth() {
    check(10);
}

#[test]
fn criterion_11_property_suites() {
    check(11);
}
