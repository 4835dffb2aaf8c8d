//! Acceptance gate: every criterion at its tolerance and time budget, one
//! line each.

use std::io::Write;

use biclosed_core::verify::{self, CriterionOutcome};

fn report(outcomes: &[CriterionOutcome]) {
    // straight to the stream so the lines show without --nocapture
    let mut err = std::io::stderr().lock();
    for o in outcomes {
        writeln!(err, "{}", o.line()).unwrap();
    }
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    writeln!(err, "acceptance: {}/{} passed", outcomes.len() - failed.len(), outcomes.len()).unwrap();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn acceptance_criteria() {
    // rank 3 everywhere a criterion is stated up to n ≤ 3 (m ≤ 4)
    let outcomes = verify::run_all(3, false).expect("rank 3 is in range");
    assert_eq!(outcomes.len(), 10);
    report(&outcomes);
}
