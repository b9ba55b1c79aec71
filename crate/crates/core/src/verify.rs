use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::code::FrCode;

/// Outcome of checking a code against the FR code definition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub valid: bool,
    /// number of sets equals `n`
    pub count_ok: bool,
    /// every set has `d` elements
    pub cardinality_ok: bool,
    pub distinct_ok: bool,
    /// Occurrences of each element `1..=theta`.
    pub coverage_histogram: BTreeMap<u64, u64>,
    /// every element occurs exactly `rho` times
    pub coverage_ok: bool,
}

/// Counts directly over the sets; knows nothing about how they were built.
pub fn verify(code: &FrCode) -> VerificationReport {
    let params = code.params();
    let sets = code.sets();
    let mut histogram: BTreeMap<u64, u64> = (1..=params.theta()).map(|e| (e, 0)).collect();
    let mut seen = HashSet::with_capacity(sets.len());
    let mut cardinality_ok = true;
    let mut distinct_ok = true;
    for set in sets {
        cardinality_ok &= set.len() as u64 == params.d();
        distinct_ok &= seen.insert(set);
        for e in set.elements() {
            *histogram.entry(e).or_insert(0) += 1;
        }
    }
    let count_ok = sets.len() as u64 == params.n();
    let coverage_ok = histogram.values().all(|&c| c == params.rho());
    VerificationReport {
        valid: count_ok && cardinality_ok && distinct_ok && coverage_ok,
        count_ok,
        cardinality_ok,
        distinct_ok,
        coverage_histogram: histogram,
        coverage_ok,
    }
}
