//! Aggregated results of a search run.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::algebra::{Outcome, Verdict};

use super::canon::CanonicalForm;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub strict: u64,
    pub equal: u64,
    pub failing: u64,
    pub undecided: u64,
}

impl Tally {
    pub fn record(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::StrictlyGreater => self.strict += 1,
            Outcome::Equal => self.equal += 1,
            Outcome::StrictlyLess => self.failing += 1,
            Outcome::Undecided => self.undecided += 1,
        }
    }

    pub fn merge(&mut self, other: &Tally) {
        self.strict += other.strict;
        self.equal += other.equal;
        self.failing += other.failing;
        self.undecided += other.undecided;
    }

    pub fn total(&self) -> u64 {
        self.strict + self.equal + self.failing + self.undecided
    }
}

/// How the verdicts were obtained.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionStats {
    /// Decided by exact integer comparison.
    pub exact: u64,
    /// Decided (or abandoned) by intervals, keyed by the last precision used.
    pub interval_bits: BTreeMap<u32, u64>,
    pub max_bits: u32,
}

impl PrecisionStats {
    pub fn record(&mut self, verdict: &Verdict) {
        match verdict.precision_bits() {
            None => self.exact += 1,
            Some(bits) => {
                *self.interval_bits.entry(bits).or_insert(0) += 1;
                self.max_bits = self.max_bits.max(bits);
            }
        }
    }

    pub fn merge(&mut self, other: &PrecisionStats) {
        self.exact += other.exact;
        for (&bits, &n) in &other.interval_bits {
            *self.interval_bits.entry(bits).or_insert(0) += n;
        }
        self.max_bits = self.max_bits.max(other.max_bits);
    }
}

/// One configuration or pattern singled out by a search.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PatternRecord {
    pub canonical: CanonicalForm,
    pub description: String,
    pub outcome: Outcome,
}

/// Per-slice (or per-pattern) counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreakdownRow {
    pub key: String,
    pub configs: u64,
    pub tally: Tally,
}

/// A named pass condition and whether it held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub statement: String,
    pub delta: u8,
    /// Configurations visited before deduplication.
    pub enumerated: u64,
    /// Distinct configurations certified.
    pub distinct: u64,
    /// Closed regular configurations left to the regular verifier.
    #[serde(default)]
    pub routed_regular: u64,
    pub tally: Tally,
    pub equality_patterns: Vec<PatternRecord>,
    pub exceptional_patterns: Vec<PatternRecord>,
    /// Failing or undecided configurations that make the run fail.
    pub violations: Vec<PatternRecord>,
    pub precision: PrecisionStats,
    pub breakdown: Vec<BreakdownRow>,
    pub checks: Vec<Check>,
    pub pass: bool,
    /// Wall time; kept out of the serialized form so reports reproduce
    /// byte for byte.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SearchReport {
    pub fn new(statement: &str, delta: u8) -> Self {
        SearchReport {
            statement: statement.to_string(),
            delta,
            enumerated: 0,
            distinct: 0,
            routed_regular: 0,
            tally: Tally::default(),
            equality_patterns: Vec::new(),
            exceptional_patterns: Vec::new(),
            violations: Vec::new(),
            precision: PrecisionStats::default(),
            breakdown: Vec::new(),
            checks: Vec::new(),
            pass: false,
            wall_time: Duration::ZERO,
        }
    }

    /// Sets `pass` from the recorded checks; no checks means failure.
    pub fn conclude(&mut self) {
        self.equality_patterns.sort();
        self.exceptional_patterns.sort();
        self.violations.sort();
        self.pass = !self.checks.is_empty() && self.checks.iter().all(|c| c.pass);
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_checks_do_not_pass() {
        let mut r = SearchReport::new("x", 1);
        r.conclude();
        assert!(!r.pass);
        r.checks.push(Check::new("ok", true, ""));
        r.conclude();
        assert!(r.pass);
    }

    #[test]
    fn timing_is_not_serialized() {
        let mut r = SearchReport::new("x", 1);
        r.wall_time = Duration::from_secs(3);
        let json = serde_json::to_string(&r).unwrap();
        let back: SearchReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.wall_time, Duration::ZERO);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}
