//! Runs every acceptance criterion in sequence and prints one line per
//! criterion, followed by the individual checks. Exits non-zero if any
//! criterion fails.
//!
//! `cargo test --test acceptance -- <ids>` runs a subset.

use chgraph_core::suite;

fn main() {
    let ids: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .filter(|i| (1..=suite::CRITERIA).contains(i))
        .collect();
    let ids = if ids.is_empty() { (1..=suite::CRITERIA).collect() } else { ids };
    let mut failed = Vec::new();
    for id in ids {
        let outcome = suite::run(id);
        println!("{}", outcome.summary_line());
        for line in &outcome.details {
            println!("    {line}");
        }
        if !outcome.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
