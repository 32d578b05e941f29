//! Runs the eleven acceptance criteria at their stated tolerances and budgets and prints
//! one verdict line per criterion. Built without the libtest harness so the lines are
//! never captured.

use pilotwave::checks::{run_check, SuiteOptions, CHECK_COUNT};
use std::process::ExitCode;

const SEED: u64 = 20_240_611;

fn main() -> ExitCode {
    // test listing (`cargo test -- --list`) must not run the suite
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let options = SuiteOptions::new(SEED);
    let mut failed = Vec::new();
    for id in 1..=CHECK_COUNT {
        let outcome = run_check(id, &options).expect("check id in range");
        println!("criterion {outcome}");
        if !outcome.passed {
            failed.push(outcome.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {CHECK_COUNT} criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
