//! Acceptance suite: one test per criterion, each driving a registered
//! verification suite at its pinned scale and tolerance (all exact).
//! Every test prints a single pass/fail line.

use matchkit::suites::{suite, SuiteConfig};

fn run(criterion: usize, name: &str) {
    let s = suite(name).unwrap_or_else(|| panic!("suite `{name}` not registered"));
    let cfg = SuiteConfig {
        threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        ..SuiteConfig::default()
    };
    let report = s
        .run(&cfg)
        .unwrap_or_else(|e| panic!("suite `{name}` errored: {e}"));
    println!(
        "acceptance {criterion:>2} {name}: {} ({} checks, {} violations) — {}",
        if report.passed { "PASS" } else { "FAIL" },
        report.checks,
        report.violations,
        report.detail
    );
    assert!(
        report.passed,
        "criterion {criterion} ({name}) failed: {}",
        report.detail
    );
}

#[test]
fn criterion_01_table_reproduction() {
    run(1, "table-reproduction");
}

#[test]
fn criterion_02_weak_acyclic_range() {
    run(2, "weak-acyclic-range");
}

#[test]
fn criterion_03_acyclic_determinant() {
    run(3, "acyclic-determinant");
}

#[test]
fn criterion_04_matching_criteria_agreement() {
    run(4, "matching-criteria-agreement");
}

#[test]
fn criterion_05_return_set_bounds() {
    run(5, "return-set-bounds");
}

#[test]
fn criterion_06_basis_match_criterion_tiny() {
    run(6, "basis-match-criterion-tiny");
}

#[test]
fn criterion_07_strong_matching_scan() {
    run(7, "strong-matching-scan");
}

#[test]
fn criterion_08_weak_local_construction() {
    run(8, "weak-local-construction");
}

#[test]
fn criterion_09_family_extension() {
    run(9, "family-extension");
}

#[test]
fn criterion_10_primitive_dimension() {
    run(10, "primitive-dimension");
}

#[test]
fn criterion_11_generator_count() {
    run(11, "generator-count");
}

#[test]
fn criterion_12_acyclic_matrix_experiment() {
    run(12, "acyclic-matrix-experiment");
}

#[test]
fn criterion_13_polyadic_agreement() {
    run(13, "polyadic-agreement");
}
