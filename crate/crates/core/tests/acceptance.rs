//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test -p permrel-core --test acceptance -- --nocapture`.

use permrel_core::acceptance::{run_criterion, AcceptanceConfig};

fn check(id: u8) {
    let outcome = run_criterion(id, &AcceptanceConfig::default());
    println!("{outcome}");
    assert!(outcome.passed, "{outcome}");
}

#[test]
fn criterion_01_rewrite_order_independence() {
    check(1);
}

#[test]
fn criterion_02_congruence_closure_agreement() {
    check(2);
}

#[test]
fn criterion_03_group_embedding() {
    check(3);
}

#[test]
fn criterion_04_local_confluence() {
    check(4);
}

#[test]
fn criterion_05_normal_form_grammar() {
    check(5);
}

#[test]
fn criterion_06_centrality_and_ideal() {
    check(6);
}

#[test]
fn criterion_07_symmetric_group_identities() {
    check(7);
}

#[test]
fn criterion_08_forbidden_factor_counts() {
    check(8);
}

#[test]
fn criterion_09_stabilizer_reduction() {
    check(9);
}

#[test]
fn criterion_10_reproducibility() {
    check(10);
}
