//! Acceptance run: every criterion at its full leaf limit, one line each.
//!
//! Criterion 8 is expected to fail on exactly one item: the drawn reduced
//! diagonal of `I4,0` lists 12 terms while the computation gives 18. Any
//! other outcome, including that item starting to pass, fails this test.
//! A composition sign without the `k·n` term must be caught by criterion 1.

use std::process::ExitCode;
use std::time::Instant;

use pairahedra_cli::suite::{criterion, criterion_1_with, CriterionReport};

const CAP: usize = 8;
const KNOWN_FAILURE: &str = "reduced Δ_C of I4,0 matches the drawing";

fn expectation(r: &CriterionReport) -> Result<(), String> {
    let failed: Vec<&str> = r.failed_items().iter().map(|i| i.name.as_str()).collect();
    match (r.id, failed.as_slice()) {
        (8, [KNOWN_FAILURE]) => Ok(()),
        (8, other) => Err(format!("expected exactly the I4,0 display to fail, got {other:?}")),
        (_, []) => Ok(()),
        (_, other) => Err(format!("failing items {other:?}")),
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let results: Vec<(CriterionReport, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = (1..=9u8)
            .map(|id| {
                s.spawn(move || {
                    let t = Instant::now();
                    let r = criterion(id, CAP);
                    (r, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    });

    let mut unexpected = 0;
    for (r, secs) in &results {
        println!("{}  [{secs:.1}s]", r.line());
        for it in r.failed_items() {
            println!("    {}: {}", it.name, it.detail);
        }
        if let Err(e) = expectation(r) {
            println!("    UNEXPECTED: {e}");
            unexpected += 1;
        }
    }

    let mutant = criterion_1_with(6, |i, _k, l, _n| i * (l + 1));
    let caught: Vec<&str> = mutant.failed_items().iter().map(|i| i.name.as_str()).collect();
    let leibniz_caught = caught.len() == 1 && caught[0].starts_with("∂ is a derivation");
    println!(
        "mutation ε = i(l+1) without k·n: criterion 1 {} ({})",
        if mutant.passed { "PASS" } else { "FAIL" },
        if leibniz_caught { "caught" } else { "NOT caught" }
    );
    for it in mutant.failed_items() {
        println!("    {}: {}", it.name, it.detail);
    }
    if !leibniz_caught {
        unexpected += 1;
    }

    println!("acceptance finished in {:.1}s", started.elapsed().as_secs_f64());
    if unexpected == 0 {
        println!("acceptance: all outcomes as expected");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected outcomes");
        ExitCode::FAILURE
    }
}
