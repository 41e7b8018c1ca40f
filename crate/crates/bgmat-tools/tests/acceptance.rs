//! Acceptance gate: one test per verification suite, one printed line each.
//!
//! Every suite rebuilds its own evidence (oracles, decimal arithmetic,
//! deterministic random probes) and returns named checks; a test fails with
//! the first failing check spelled out.

use bgmat_tools::suites::run_suite;

fn gate(number: usize, name: &str) {
    let report = run_suite(name).expect("suite is registered");
    let verdict = if report.passed() { "pass" } else { "FAIL" };
    println!("criterion {number:02} [{name}] {verdict}: {}", report.title);
    if !report.passed() {
        let mut lines = String::new();
        for c in report.failures() {
            lines.push_str(&format!("\n  {} :: {}", c.name, c.detail));
        }
        panic!("criterion {number:02} [{name}] failed:{lines}");
    }
}

#[test]
fn criterion_01_small_graph_circuit_oracle() {
    gate(1, "oracle");
}

#[test]
fn criterion_02_four_point_line_bundle() {
    gate(2, "u24");
}

#[test]
fn criterion_03_disjoint_line_pair() {
    gate(3, "u24-sum");
}

#[test]
fn criterion_04_fixture_frameworks() {
    gate(4, "frameworks");
}

#[test]
fn criterion_05_pendant_roll_ups() {
    gate(5, "roll-up");
}

#[test]
fn criterion_06_fixing_graph_invariance() {
    gate(6, "fixing");
}

#[test]
fn criterion_07_canonical_reconstruction() {
    gate(7, "reconstruct");
}

#[test]
fn criterion_08_three_way_gluing() {
    gate(8, "glue");
}

#[test]
fn criterion_09_triangles_in_sparse_complements() {
    gate(9, "turan");
}

#[test]
fn criterion_10_bound_table() {
    gate(10, "bounds");
}

#[test]
fn criterion_11_canonicalization_rules() {
    gate(11, "cg-rules");
}

#[test]
fn criterion_12_excluded_minor_scans() {
    gate(12, "scan");
}
