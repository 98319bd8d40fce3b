//! One line per acceptance criterion.
//!
//! Criteria listed in `KNOWN_RED` fail for reasons recorded outside the
//! repository; they still print FAIL but do not fail the target. Any other
//! failure, or a known-red criterion that starts passing, exits nonzero.

use std::process::ExitCode;

use automation_race::scenario_runner::check::{run_checks, select};

const KNOWN_RED: [u8; 2] = [2, 10];

fn main() -> ExitCode {
    let ids = select(None).expect("all criteria");
    let results = run_checks(&ids, &[]);
    let mut unexpected = Vec::new();
    for r in &results {
        println!("{r}");
        let known = KNOWN_RED.contains(&r.id);
        if r.passed == known {
            unexpected.push(r.id);
        }
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("acceptance: {passed}/{} passed; known red {:?}", results.len(), KNOWN_RED);
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
