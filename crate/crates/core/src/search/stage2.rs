//! Second stage at Δ = 5: every exceptional appearance is cleared by
//! certifying a neighbour of the root instead.
//!
//! Rooted at a neighbour `x'` of `x`, levels 0-2 lie inside the appearance:
//! `N(x')` consists of `x` and level-2 vertices, and vertices two steps away
//! are level-1 or level-3 vertices of the appearance. Degrees of levels 0-2
//! of the appearance are fixed by it. A level-3 vertex `w` may have further
//! neighbours outside the drawing, so its degree ranges over
//! `max(d(x), deg(w))..=5`; every choice is a completion.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::time::Instant;

use rayon::prelude::*;

use crate::algebra::Outcome;

use super::canon::{canonical_config, canonical_form, CanonicalForm, LeveledGraph};
use super::config::{Level2Vertex, LocalConfig};
use super::reference::reference_number;
use super::report::{BreakdownRow, Check, PatternRecord, SearchReport, Tally};
use super::verify::{SearchError, SearchOptions};

/// Maximum degree of the graphs the exceptions come from.
pub const STAGE2_DELTA: u8 = 5;

fn distances(g: &LeveledGraph, from: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[from] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices are reached");
        for &w in &g.adj[u] {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All configurations rooted at neighbour `xp` of the pattern root that are
/// consistent with the pattern, in canonical form.
pub fn completions_at(pattern: &LeveledGraph, xp: usize, delta: u8) -> Vec<LocalConfig> {
    let d_root = pattern.adj[0].len() as u8;
    let deg = |v: usize| pattern.adj[v].len() as u8;
    let dist = distances(pattern, xp);
    let l1: Vec<usize> = (0..pattern.n()).filter(|&v| dist[v] == Some(1)).collect();
    let l2: Vec<usize> = (0..pattern.n()).filter(|&v| dist[v] == Some(2)).collect();
    let l1_degrees: Vec<u8> = l1.iter().map(|&v| deg(v)).collect();
    let masks: Vec<u8> = l2
        .iter()
        .map(|&w| {
            l1.iter()
                .enumerate()
                .filter(|(_, &u)| pattern.adj[w].binary_search(&u).is_ok())
                .fold(0u8, |m, (i, _)| m | (1 << i))
        })
        .collect();
    // degree choices per level-2 vertex of the new root
    let ranges: Vec<Vec<u8>> = l2
        .iter()
        .map(|&w| {
            if pattern.level[w] >= 3 {
                (deg(w).max(d_root)..=delta).collect()
            } else {
                vec![deg(w)]
            }
        })
        .collect();
    let mut out = BTreeMap::new();
    let mut choice = vec![0usize; l2.len()];
    loop {
        let vertices: Vec<Level2Vertex> = (0..l2.len())
            .map(|i| Level2Vertex::new(masks[i], ranges[i][choice[i]]))
            .collect();
        let cfg = LocalConfig::new(delta, l1_degrees.clone(), vertices)
            .expect("pattern neighbourhoods give valid configurations");
        let canon = canonical_config(&cfg);
        out.entry(canonical_form(&canon)).or_insert(canon);
        // odometer over the degree choices
        let mut i = 0;
        while i < choice.len() {
            choice[i] += 1;
            if choice[i] < ranges[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
    }
    out.into_values().collect()
}

/// Completions over every neighbour of the pattern root.
pub fn completions(pattern: &LeveledGraph, delta: u8) -> Vec<LocalConfig> {
    let mut seen = BTreeMap::new();
    for &xp in &pattern.adj[0] {
        for cfg in completions_at(pattern, xp, delta) {
            seen.entry(canonical_form(&cfg)).or_insert(cfg);
        }
    }
    seen.into_values().collect()
}

/// Certifies every completion of every exceptional pattern; passes only if
/// all of them are strictly good.
pub fn verify_statement1_stage2(
    exceptions: &[CanonicalForm],
    opts: SearchOptions,
) -> Result<SearchReport, SearchError> {
    let start = Instant::now();
    let mut report = SearchReport::new("statement1.stage2", STAGE2_DELTA);
    let mut per_pattern: Vec<(String, BTreeSet<CanonicalForm>)> = Vec::new();
    let mut all: BTreeMap<CanonicalForm, LocalConfig> = BTreeMap::new();
    for (index, form) in exceptions.iter().enumerate() {
        let pattern = LeveledGraph::from_canonical(form).ok_or(SearchError::BadPattern { index })?;
        if pattern.n() == 0 || pattern.level[0] != 0 {
            return Err(SearchError::BadPattern { index });
        }
        let key = match reference_number(form) {
            Some(k) => format!("exceptional pattern {k}"),
            None => format!("pattern {}", form.to_hex()),
        };
        let cfgs = completions(&pattern, STAGE2_DELTA);
        report.enumerated += cfgs.len() as u64;
        let mut forms = BTreeSet::new();
        for cfg in cfgs {
            let f = canonical_form(&cfg);
            forms.insert(f.clone());
            all.entry(f).or_insert(cfg);
        }
        per_pattern.push((key, forms));
    }
    let work: Vec<(CanonicalForm, LocalConfig)> = all.into_iter().collect();
    let verdicts: Vec<(CanonicalForm, LocalConfig, crate::algebra::Verdict)> = work
        .into_par_iter()
        .map(|(f, cfg)| {
            let v = cfg.goodness(opts.precision);
            (f, cfg, v)
        })
        .collect();
    let mut outcome_of = BTreeMap::new();
    for (f, cfg, v) in &verdicts {
        report.tally.record(v.outcome);
        report.precision.record(v);
        outcome_of.insert(f.clone(), v.outcome);
        if v.outcome != Outcome::StrictlyGreater {
            report.violations.push(PatternRecord {
                canonical: f.clone(),
                description: cfg.describe(),
                outcome: v.outcome,
            });
        }
        if v.outcome == Outcome::Equal {
            report.equality_patterns.push(PatternRecord {
                canonical: f.clone(),
                description: cfg.describe(),
                outcome: v.outcome,
            });
        }
    }
    report.distinct = verdicts.len() as u64;
    for (key, forms) in per_pattern {
        let mut tally = Tally::default();
        for f in &forms {
            tally.record(outcome_of[f]);
        }
        report.breakdown.push(BreakdownRow {
            key,
            configs: forms.len() as u64,
            tally,
        });
    }
    let strict = report.tally.strict == report.distinct;
    report.checks.push(Check::new(
        "every completion strictly good",
        strict && !exceptions.is_empty(),
        format!(
            "{} of {} completions strict across {} patterns",
            report.tally.strict,
            report.distinct,
            exceptions.len()
        ),
    ));
    report.checks.push(Check::new(
        "no undecided configurations",
        report.tally.undecided == 0,
        format!("{} undecided", report.tally.undecided),
    ));
    report.wall_time = start.elapsed();
    report.conclude();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::reference::reference_patterns;

    #[test]
    fn path_pattern_completions() {
        // x - a - b - c: from a, level 1 is {x, b}, level 2 is {c}
        let path = &reference_patterns()[0];
        let cfgs = completions(path, 5);
        // c has degree 1..=5 (at least d(x) = 1)
        assert_eq!(cfgs.len(), 5);
        for c in &cfgs {
            assert_eq!(c.root_degree(), 2);
            assert_eq!(c.l1_degrees, vec![2, 1]);
        }
    }

    #[test]
    fn rejects_garbage() {
        let bad = CanonicalForm(vec![3, 0]);
        assert!(matches!(
            verify_statement1_stage2(&[bad], SearchOptions::default()),
            Err(SearchError::BadPattern { index: 0 })
        ));
    }
}
