//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines; the tests fail exactly when a criterion does.

use cactus_cells::verify::{self, Check, CheckStatus};

fn assert_criterion(number: usize, check: Check) {
    let label = match check.status {
        CheckStatus::Pass => "PASS",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Inconclusive => "INCONCLUSIVE",
    };
    println!("criterion {number:2} [{label}] {}: {}", check.name, check.details);
    assert!(
        check.status == CheckStatus::Pass,
        "criterion {number} failed: {}",
        check.details
    );
}

#[test]
fn criterion_01_distance_fidelity() {
    assert_criterion(1, verify::distance_fidelity());
}

#[test]
fn criterion_02_compression_fidelity() {
    assert_criterion(2, verify::compression_fidelity(6));
}

#[test]
fn criterion_03_f_vectors_and_euler() {
    assert_criterion(3, verify::f_vectors_and_euler());
}

#[test]
fn criterion_04_dual_standard_consistency() {
    assert_criterion(4, verify::dual_standard_consistency(6));
}

#[test]
fn criterion_05_closure_polytope_faces() {
    assert_criterion(5, verify::closure_faces(5));
}

#[test]
fn criterion_06_group_orders() {
    assert_criterion(6, verify::group_orders(1_000_000));
}

#[test]
fn criterion_07_presentation_roundtrip() {
    assert_criterion(7, verify::presentation_roundtrip(6));
}

#[test]
fn criterion_08_relator_soundness() {
    assert_criterion(8, verify::relator_soundness(7, false));
}

#[test]
fn criterion_09_permutahedron_homeomorphism() {
    assert_criterion(9, verify::permutahedron_homeo(0xCAC705, 6));
}

#[test]
fn criterion_10_counting_identities() {
    assert_criterion(10, verify::counting_identities(7));
}

#[test]
fn criterion_11_infinite_case_inconclusive() {
    assert_criterion(11, verify::infinite_inconclusive(1_000_000));
}
