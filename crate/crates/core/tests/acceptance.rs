//! One line per acceptance criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are expected to fail; the target fails when the set of
//! failing criteria differs from that list in either direction.

use std::process::ExitCode;

use diffscheme::engine::EngineOptions;
use diffscheme::verify::{criteria, golden_suite, numerics_suite, oracle_suite, property_suite, DEFAULT_SEED};

/// The box-rule Lax variants carry an implicit `(θx + 1)` factor on the new level and are
/// unstable at every Courant number, so the simulation matrix cannot be bounded.
const KNOWN_FAILURES: &[u32] = &[8];

fn main() -> ExitCode {
    let opts = EngineOptions::default();
    let reports = [
        golden_suite(&opts),
        oracle_suite(100, DEFAULT_SEED),
        numerics_suite(&opts),
        property_suite(DEFAULT_SEED, &opts),
    ];
    let all = criteria(&reports);
    assert_eq!(all.iter().map(|c| c.number).collect::<Vec<_>>(), (1..=9).collect::<Vec<_>>());

    let mut failing = Vec::new();
    for c in &all {
        if c.passed {
            println!("criterion {}: PASS ({} checks, slowest {} ms)", c.number, c.checks, c.millis);
        } else {
            failing.push(c.number);
            println!(
                "criterion {}: FAIL ({} of {} checks fail, slowest {} ms: {})",
                c.number,
                c.failed.len(),
                c.checks,
                c.millis,
                c.failed.join("; ")
            );
        }
    }
    for r in &reports {
        for c in &r.checks {
            let mark = if c.passed { "ok" } else { "FAILED" };
            println!("  {}/{} {mark}: {}", r.suite, c.id, c.detail);
        }
    }
    if failing == KNOWN_FAILURES {
        println!("failing criteria match the known list {KNOWN_FAILURES:?}");
        ExitCode::SUCCESS
    } else {
        println!("failing criteria {failing:?} differ from the known list {KNOWN_FAILURES:?}");
        ExitCode::FAILURE
    }
}
