//! Fixtures shared by the criterion benches.

use chgraph_core::constructions::{build_str, FamilyInstance};

/// Families timed by the benches, smallest first.
pub const FAMILIES: &[&str] = &["linegraph:petersen", "hamming:2,4", "johnson-c:7,2", "hamming:3,3", "ex83:3"];

pub fn instance(spec: &str) -> FamilyInstance {
    build_str(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}
