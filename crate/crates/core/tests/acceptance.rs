//! Acceptance suite: one test per criterion, so the harness prints one
//! pass/fail line for each. Every test replays the corresponding
//! checks from [`pgabr_core::verify`] and fails with the full list of
//! failing check details.

use pgabr_core::testgen::DEFAULT_SEED;
use pgabr_core::verify::{self, Check};

fn assert_all_pass(criterion: &str, checks: Vec<Check>) {
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
    assert!(
        failed.is_empty(),
        "criterion {criterion}: {} of {} checks failed:\n{}",
        failed.len(),
        checks.len(),
        failed
            .iter()
            .map(|c| format!("  [{}] {}", c.id, c.detail))
            .collect::<Vec<_>>()
            .join("\n"),
    );
}

#[test]
fn criterion_01_sixteen_equivalence_classes_with_exact_membership() {
    assert_all_pass("1", verify::criterion_classes());
}

#[test]
fn criterion_02_axioms_sound_and_complete_for_the_partition() {
    assert_all_pass("2", verify::criterion_axioms());
}

#[test]
fn criterion_03_exactly_256_minimal_method_sets_of_size_8() {
    assert_all_pass("3", verify::criterion_minimal_sets());
}

#[test]
fn criterion_04_strict_bounds_for_the_six_named_sets() {
    assert_all_pass("4", verify::criterion_named_bounds(6));
}

#[test]
fn criterion_05_all_translation_fixtures_realize_their_effects() {
    assert_all_pass("5", verify::criterion_fixtures());
}

#[test]
fn criterion_06_subset_bound_predictions_hold_with_count_reported() {
    assert_all_pass("6", verify::criterion_corollary3(5));
}

#[test]
fn criterion_07_rewriter_length_bound_and_equivalence_fragment() {
    assert_all_pass("7", verify::criterion_rewrite(DEFAULT_SEED));
}

#[test]
fn criterion_08_optimized_search_agrees_with_naive_enumeration() {
    assert_all_pass("8", verify::criterion_oracle_equivalence(DEFAULT_SEED));
}

#[test]
fn criterion_09_semantics_axioms_and_interpreter_oracle_agreement() {
    assert_all_pass("9", verify::criterion_semantics(DEFAULT_SEED));
}

#[test]
fn criterion_10_full_sweep_resolves_all_255_subsets_deterministically() {
    assert_all_pass("10", verify::criterion_sweep(6));
}
