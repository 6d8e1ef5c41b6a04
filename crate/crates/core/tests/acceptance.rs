//! Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

use std::process::ExitCode;

use dgstab::linalg::DEFAULT_PRIME;
use dgstab::verify::{criterion_field_robustness, run_criteria, CriterionOutcome, ROBUSTNESS_PRIMES};
use dgstab::{Execution, PrimeField};

fn report(o: &CriterionOutcome) -> bool {
    println!("{}", o.line());
    for f in o.check.failures.iter().take(20) {
        println!("    {f}");
    }
    o.passed()
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let runs: Vec<Vec<CriterionOutcome>> = ROBUSTNESS_PRIMES
        .iter()
        .map(|&p| run_criteria(PrimeField::new(p).expect("prime"), Execution::Parallel).expect("criteria run"))
        .collect();
    let default_idx = ROBUSTNESS_PRIMES.iter().position(|&p| p == DEFAULT_PRIME).expect("default prime swept");
    let mut ok = true;
    for o in &runs[default_idx] {
        ok &= report(o);
    }
    for (p, run) in ROBUSTNESS_PRIMES.iter().zip(&runs) {
        if *p != DEFAULT_PRIME {
            for o in run {
                println!("    {}", o.line());
            }
        }
    }
    ok &= report(&criterion_field_robustness(&runs));
    println!("acceptance: {}", if ok { "PASS" } else { "FAIL" });
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
