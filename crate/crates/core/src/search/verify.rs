//! The maximum-degree search (Δ ≤ 4) and the first stage of the
//! minimum-degree search at Δ = 5.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Outcome, Precision};

use super::appearance::{collect_appearances, Appearance};
use super::canon::canonical_form;
use super::config::{LocalConfig, RootRule};
use super::enumerate::{padding_for, shards, Shard, SliceSpec, WalkCounts};
use super::reference::{reference_number, REFERENCE_LEN};
use super::report::{BreakdownRow, Check, PatternRecord, PrecisionStats, SearchReport, Tally};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("maximum degree {delta} is outside the supported range {lo}..={hi}")]
    DeltaOutOfRange { delta: u8, lo: u8, hi: u8 },
    #[error("exceptional pattern {index} is not a valid leveled graph encoding")]
    BadPattern { index: usize },
}

/// Settings shared by every search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub precision: Precision,
}

/// Certifies one configuration.
pub fn config_goodness(cfg: &LocalConfig, precision: Precision) -> crate::algebra::Verdict {
    cfg.goodness(precision)
}

fn record(cfg: &LocalConfig, outcome: Outcome) -> PatternRecord {
    PatternRecord {
        canonical: canonical_form(cfg),
        description: cfg.describe(),
        outcome,
    }
}

#[derive(Default)]
struct ShardResult {
    counts: WalkCounts,
    routed: u64,
    tally: Tally,
    precision: PrecisionStats,
    complete_bipartite: u64,
    equal: Vec<PatternRecord>,
    /// Equal verdicts away from complete bipartite patterns.
    stray_equal: Vec<PatternRecord>,
    failing: Vec<LocalConfig>,
    undecided: Vec<LocalConfig>,
}

fn run_shard(shard: &Shard, precision: Precision, route_regular: bool) -> ShardResult {
    let mut r = ShardResult::default();
    r.counts = shard.walk(&mut |cfg| {
        if route_regular && cfg.is_closed_regular() {
            r.routed += 1;
            return;
        }
        let verdict = cfg.goodness(precision);
        r.tally.record(verdict.outcome);
        r.precision.record(&verdict);
        let cb = cfg.is_complete_bipartite_pattern();
        if cb {
            r.complete_bipartite += 1;
        }
        match verdict.outcome {
            Outcome::Equal => {
                let rec = record(&cfg, Outcome::Equal);
                if !cb {
                    r.stray_equal.push(rec.clone());
                }
                r.equal.push(rec);
            }
            Outcome::StrictlyLess => r.failing.push(cfg),
            Outcome::Undecided => r.undecided.push(cfg),
            Outcome::StrictlyGreater => {}
        }
    });
    r
}

struct SliceRun {
    report: SearchReport,
    complete_bipartite: u64,
    stray_equal: Vec<PatternRecord>,
    failing: Vec<LocalConfig>,
}

/// Certifies every configuration of the given slices, in parallel over
/// shards; results merge in shard order so they do not depend on the
/// number of workers.
fn run_slices(statement: &str, delta: u8, specs: &[SliceSpec], opts: SearchOptions, route_regular: bool) -> SliceRun {
    let start = Instant::now();
    let work: Vec<(u8, Shard)> = specs
        .iter()
        .flat_map(|&s| shards(s).into_iter().map(move |sh| (s.d0, sh)))
        .collect();
    let results: Vec<(u8, ShardResult)> = work
        .par_iter()
        .map(|(d0, sh)| (*d0, run_shard(sh, opts.precision, route_regular)))
        .collect();

    let mut report = SearchReport::new(statement, delta);
    let mut complete_bipartite = 0;
    let mut stray_equal = Vec::new();
    let mut failing = Vec::new();
    let mut rows: Vec<BreakdownRow> = specs
        .iter()
        .map(|s| BreakdownRow {
            key: format!("d0={}", s.d0),
            configs: 0,
            tally: Tally::default(),
        })
        .collect();
    for (d0, r) in results {
        report.enumerated += r.counts.enumerated;
        report.distinct += r.counts.distinct - r.routed;
        report.routed_regular += r.routed;
        report.tally.merge(&r.tally);
        report.precision.merge(&r.precision);
        report.equality_patterns.extend(r.equal);
        for cfg in &r.undecided {
            report.violations.push(record(cfg, Outcome::Undecided));
        }
        let row = rows
            .iter_mut()
            .find(|row| row.key == format!("d0={d0}"))
            .expect("row per slice");
        row.configs += r.counts.distinct - r.routed;
        row.tally.merge(&r.tally);
        complete_bipartite += r.complete_bipartite;
        stray_equal.extend(r.stray_equal);
        failing.extend(r.failing);
    }
    report.breakdown = rows;
    report.wall_time = start.elapsed();
    SliceRun {
        report,
        complete_bipartite,
        stray_equal,
        failing,
    }
}

fn check_delta(delta: u8, lo: u8, hi: u8) -> Result<(), SearchError> {
    if (lo..=hi).contains(&delta) {
        Ok(())
    } else {
        Err(SearchError::DeltaOutOfRange { delta, lo, hi })
    }
}

/// Every vertex of maximum degree is good when the maximum degree is at
/// most `delta`, with equality only on complete bipartite components.
pub fn verify_statement2(delta: u8, opts: SearchOptions) -> Result<SearchReport, SearchError> {
    check_delta(delta, 1, 4)?;
    let rule = RootRule::MaxDegreeRoot;
    let specs: Vec<SliceSpec> = (0..=delta)
        .map(|d0| SliceSpec {
            d0,
            delta_eff: padding_for(rule, d0, delta),
            rule,
        })
        .collect();
    let mut run = run_slices("statement2", delta, &specs, opts, false);
    let report = &mut run.report;
    for cfg in &run.failing {
        report.violations.push(record(cfg, Outcome::StrictlyLess));
    }
    report.checks.push(Check::new(
        "no failing configurations",
        report.tally.failing == 0,
        format!("{} failing", report.tally.failing),
    ));
    report.checks.push(Check::new(
        "no undecided configurations",
        report.tally.undecided == 0,
        format!("{} undecided", report.tally.undecided),
    ));
    push_equality_check(report, run.complete_bipartite, &run.stray_equal);
    report.conclude();
    Ok(run.report)
}

fn push_equality_check(report: &mut SearchReport, complete_bipartite: u64, stray: &[PatternRecord]) {
    let exact = stray.is_empty() && report.tally.equal == complete_bipartite;
    let detail = format!(
        "{} equal, {} complete bipartite patterns, {} equal elsewhere",
        report.tally.equal,
        complete_bipartite,
        stray.len()
    );
    report.checks.push(Check::new(
        "equality exactly on complete bipartite patterns",
        exact,
        detail,
    ));
}

/// Outcome of the first minimum-degree stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage1Result {
    pub report: SearchReport,
    pub appearances: Vec<Appearance>,
}

/// Minimum-degree roots at Δ = `delta`: every root is good unless its
/// levels 0-3 look like one of the reference drawings.
pub fn verify_statement1_stage1(delta: u8, opts: SearchOptions) -> Result<Stage1Result, SearchError> {
    check_delta(delta, 5, 5)?;
    let rule = RootRule::MinDegreeRoot;
    // a non-regular graph has a vertex of degree below delta
    let specs: Vec<SliceSpec> = (0..delta)
        .map(|d0| SliceSpec {
            d0,
            delta_eff: padding_for(rule, d0, delta),
            rule,
        })
        .collect();
    let mut run = run_slices("statement1.stage1", delta, &specs, opts, true);
    let appearances = collect_appearances(&run.failing, reference_number);
    let report = &mut run.report;
    for cfg in &run.failing {
        report.exceptional_patterns.push(record(cfg, Outcome::StrictlyLess));
    }
    report.checks.push(Check::new(
        "no undecided configurations",
        report.tally.undecided == 0,
        format!("{} undecided", report.tally.undecided),
    ));
    push_equality_check(report, run.complete_bipartite, &run.stray_equal);
    let matched: Vec<usize> = appearances.iter().filter_map(|a| a.reference).collect();
    let mut covered = matched.clone();
    covered.sort_unstable();
    covered.dedup();
    report.checks.push(Check::new(
        "exceptional appearances match the fourteen reference drawings",
        appearances.len() == REFERENCE_LEN && covered.len() == REFERENCE_LEN && matched.len() == REFERENCE_LEN,
        format!(
            "{} appearances from {} failing configurations, {} matched",
            appearances.len(),
            run.failing.len(),
            covered.len()
        ),
    ));
    report.conclude();
    Ok(Stage1Result {
        report: run.report,
        appearances,
    })
}
