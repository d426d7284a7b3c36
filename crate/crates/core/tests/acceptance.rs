//! Runs every acceptance criterion and prints one line per criterion.
//!
//! The Sylvester part of criterion 12 does not hold beyond `n = 2`, so that
//! line prints FAIL and names the vanishing minor. The run succeeds only if
//! every other criterion passes and criterion 12 fails in exactly that way.

use std::process::ExitCode;
use std::thread;

use rigidity::selftest::{run_criterion, CriterionReport, CRITERIA};

const SYLVESTER_CHECK: &str = "all minors of Sylvester 4x4 nonzero";
const SYLVESTER_NOTE: &str = "the 2x2 minor on rows {12}, columns {13} is zero";

/// Problems with a report beyond the documented divergence.
fn unexpected(r: &CriterionReport) -> Vec<String> {
    let mut out = Vec::new();
    if r.elapsed > r.budget {
        out.push("time budget exceeded".to_string());
    }
    for f in r.failures() {
        let known = r.id == 12 && f.name == SYLVESTER_CHECK && f.note == SYLVESTER_NOTE;
        if !known {
            out.push(format!("{}: {}", f.name, f.note));
        }
    }
    if r.id == 12 {
        if !r.failures().iter().any(|f| f.name == SYLVESTER_CHECK) {
            out.push("the 4x4 Sylvester matrix was expected to have a vanishing minor".into());
        }
        if !r.checks.iter().any(|c| c.name == "all minors of Sylvester 2x2 nonzero" && c.ok) {
            out.push("the 2x2 Sylvester check is missing or failed".into());
        }
    }
    out
}

fn main() -> ExitCode {
    let ids: Vec<u32> = CRITERIA.iter().map(|c| c.0).collect();
    assert_eq!(ids, (1..=12).collect::<Vec<_>>(), "criteria table must cover 1..=12");

    let results: Vec<_> = thread::scope(|s| {
        let handles: Vec<_> = ids.iter().map(|&id| s.spawn(move || run_criterion(id))).collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread panicked")).collect()
    });

    let mut problems = 0;
    let mut passed = 0;
    for (id, res) in ids.iter().zip(results) {
        match res {
            Ok(r) => {
                println!("{r}");
                if r.passed() {
                    passed += 1;
                }
                for p in unexpected(&r) {
                    println!("    unexpected: {p}");
                    problems += 1;
                }
            }
            Err(e) => {
                println!("criterion {id:>2} FAIL errored: {e}");
                problems += 1;
            }
        }
    }
    println!("acceptance: {passed} of {} criteria pass; unexpected problems: {problems}", ids.len());
    if problems == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
