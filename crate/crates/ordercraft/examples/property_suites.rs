//! Run the seeded property suites programmatically and inspect the report.
//!
//! Run with: cargo run --example property_suites

use ordercraft::suite::{run_suites, SuiteConfig, SuiteName};

fn main() {
    let cfg = SuiteConfig {
        seed: 2024,
        budget: 15,
        mutation: None,
    };
    let report = run_suites(&SuiteName::ALL, &cfg);
    for suite in &report.suites {
        for p in &suite.properties {
            println!(
                "{:<10} {:<34} {}",
                suite.suite,
                p.name,
                if p.passed { "pass" } else { "FAIL" }
            );
        }
    }
    assert!(report.passed(), "all suites green");

    // reports are byte-stable for a fixed seed and budget
    let again = run_suites(&SuiteName::ALL, &cfg);
    assert_eq!(report.to_json(), again.to_json());
    println!("\nreport is deterministic: {} bytes", report.to_json().len());
}
