//! Full verification runs and the certificate document they produce.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{check_f_fact, FactCheckReport, Precision};
use crate::regular::{verify_regular, RegularReport};
use crate::search::{
    to_dot, verify_statement1_stage1, verify_statement1_stage2, verify_statement2, CanonicalForm, SearchError,
    SearchOptions, SearchReport,
};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest maximum degree the searches cover.
pub const MAX_DELTA: u8 = 5;

/// Which parts of the proof to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statement {
    #[default]
    All,
    Fact,
    Regular,
    /// Maximum-degree roots, Δ ≤ 4.
    Two,
    /// Minimum-degree roots at Δ = 5, both stages.
    One,
}

impl Statement {
    fn includes(self, part: Statement) -> bool {
        self == Statement::All || self == part
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statement::All => "all",
            Statement::Fact => "fact",
            Statement::Regular => "regular",
            Statement::Two => "2",
            Statement::One => "1",
        })
    }
}

impl FromStr for Statement {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Statement::All),
            "fact" => Ok(Statement::Fact),
            "regular" => Ok(Statement::Regular),
            "2" | "two" => Ok(Statement::Two),
            "1" | "one" => Ok(Statement::One),
            other => Err(format!(
                "unknown statement '{other}' (expected all, fact, regular, 1 or 2)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: String,
    pub delta: u8,
    pub statement: Statement,
    pub jobs: usize,
    pub precision: Precision,
    pub seed: u64,
    pub input: Option<String>,
    pub json: Option<String>,
    pub dot: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            subcommand: "verify-all".to_string(),
            delta: MAX_DELTA,
            statement: Statement::All,
            jobs: 1,
            precision: Precision::default(),
            seed: 0,
            input: None,
            json: None,
            dot: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("maximum degree {0} is beyond the verified range 1..={MAX_DELTA}")]
    DeltaTooLarge(u8),
    #[error("maximum degree must be at least 1")]
    DeltaZero,
    #[error("worker count must be at least 1")]
    NoWorkers,
    #[error("precision start {start} exceeds cap {cap} (or is zero)")]
    Precision { start: u32, cap: u32 },
    #[error(transparent)]
    Search(#[from] SearchError),
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), RunError> {
        if self.delta > MAX_DELTA {
            return Err(RunError::DeltaTooLarge(self.delta));
        }
        if self.delta == 0 {
            return Err(RunError::DeltaZero);
        }
        if self.jobs == 0 {
            return Err(RunError::NoWorkers);
        }
        let (start, cap) = (self.precision.start_bits, self.precision.cap_bits);
        if start == 0 || start > cap {
            return Err(RunError::Precision { start, cap });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Overall {
    Pass,
    Fail,
    Undecided,
}

impl Overall {
    pub fn exit_code(self) -> i32 {
        match self {
            Overall::Pass => 0,
            Overall::Fail => 1,
            Overall::Undecided => 2,
        }
    }
}

impl fmt::Display for Overall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Overall::Pass => "PASS",
            Overall::Fail => "FAIL",
            Overall::Undecided => "UNDECIDED",
        })
    }
}

/// One exceptional appearance with its drawing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionRecord {
    pub canonical: CanonicalForm,
    pub reference: Option<usize>,
    pub config: String,
    pub dot: String,
}

fn exception_stem(reference: Option<usize>, index: usize) -> String {
    match reference {
        Some(k) => format!("exception_{k:02}"),
        None => format!("exception_extra_{:02}", index + 1),
    }
}

impl ExceptionRecord {
    /// File name used when exporting the drawing; `index` is the record's
    /// position in the list.
    pub fn file_name(&self, index: usize) -> String {
        format!("{}.dot", exception_stem(self.reference, index))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statement1Section {
    pub stage1: SearchReport,
    pub exceptions: Vec<ExceptionRecord>,
    pub stage2: SearchReport,
}

/// Wall-clock seconds per part; not part of the reproducible content.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub seconds: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub version: String,
    pub config: RunConfig,
    pub fact_check: Option<FactCheckReport>,
    pub regular: Vec<RegularReport>,
    pub statement2: Option<SearchReport>,
    pub statement1: Option<Statement1Section>,
    pub overall: Overall,
    pub timing: Timing,
}

impl CertificateDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// The JSON without the timing block, for reproducibility comparisons.
    pub fn reproducible_json(&self) -> String {
        let mut copy = self.clone();
        copy.timing = Timing::default();
        copy.to_json()
    }

    fn undecided(&self) -> bool {
        let search = |r: &SearchReport| r.tally.undecided > 0;
        self.statement2.as_ref().is_some_and(search)
            || self
                .statement1
                .as_ref()
                .is_some_and(|s| search(&s.stage1) || search(&s.stage2))
    }

    fn all_pass(&self) -> bool {
        self.fact_check.as_ref().is_none_or(|f| f.pass)
            && self.regular.iter().all(|r| r.verdict)
            && self.statement2.as_ref().is_none_or(|r| r.pass)
            && self.statement1.as_ref().is_none_or(|s| s.stage1.pass && s.stage2.pass)
    }

    fn conclude(&mut self) {
        self.overall = if self.undecided() {
            Overall::Undecided
        } else if self.all_pass() {
            Overall::Pass
        } else {
            Overall::Fail
        };
    }

    /// Plain-text summary, one line per part.
    pub fn summary_lines(&self) -> Vec<String> {
        let mark = |b: bool| if b { "PASS" } else { "FAIL" };
        let mut out = Vec::new();
        if let Some(f) = &self.fact_check {
            out.push(format!(
                "fact check (delta {}): {} tuples, {} failures: {}",
                f.delta,
                f.tuples.len(),
                f.failures,
                mark(f.pass)
            ));
        }
        for r in &self.regular {
            out.push(format!(
                "regular d={}: {} profiles, {} equalities: {}",
                r.d,
                r.profiles,
                r.equalities,
                mark(r.verdict)
            ));
        }
        let search = |name: &str, r: &SearchReport| {
            format!(
                "{name}: {} configurations ({} enumerated), strict {} equal {} failing {} undecided {}: {}",
                r.distinct,
                r.enumerated,
                r.tally.strict,
                r.tally.equal,
                r.tally.failing,
                r.tally.undecided,
                mark(r.pass)
            )
        };
        if let Some(r) = &self.statement2 {
            out.push(search(&format!("statement 2 (delta {})", r.delta), r));
        }
        if let Some(s) = &self.statement1 {
            out.push(search("statement 1 stage 1", &s.stage1));
            out.push(format!("  exceptional appearances: {}", s.exceptions.len()));
            out.push(search("statement 1 stage 2", &s.stage2));
        }
        out.push(format!("overall: {}", self.overall));
        out
    }
}

/// Runs the selected parts on the current rayon pool.
pub fn run_verification(config: &RunConfig) -> Result<CertificateDocument, RunError> {
    config.validate()?;
    let opts = SearchOptions {
        precision: config.precision,
    };
    let mut doc = CertificateDocument {
        version: TOOL_VERSION.to_string(),
        config: config.clone(),
        fact_check: None,
        regular: Vec::new(),
        statement2: None,
        statement1: None,
        overall: Overall::Fail,
        timing: Timing::default(),
    };
    let delta = config.delta;
    let sel = config.statement;

    if sel.includes(Statement::Fact) {
        let t = Instant::now();
        let fact = check_f_fact(u32::from(delta.max(2))).expect("delta is at least 2");
        doc.timing
            .seconds
            .insert("fact_check".into(), t.elapsed().as_secs_f64());
        doc.fact_check = Some(fact);
    }
    if sel.includes(Statement::Regular) {
        for d in 1..=u32::from(delta) {
            let r = verify_regular(d, config.precision).expect("degree in range");
            doc.timing
                .seconds
                .insert(format!("regular_{d}"), r.wall_time.as_secs_f64());
            doc.regular.push(r);
        }
    }
    if sel.includes(Statement::Two) {
        let r = verify_statement2(delta.min(4), opts)?;
        doc.timing
            .seconds
            .insert("statement2".into(), r.wall_time.as_secs_f64());
        doc.statement2 = Some(r);
    }
    if sel.includes(Statement::One) && delta == MAX_DELTA {
        let s1 = verify_statement1_stage1(delta, opts)?;
        let forms: Vec<CanonicalForm> = s1.appearances.iter().map(|a| a.canonical.clone()).collect();
        let stage2 = verify_statement1_stage2(&forms, opts)?;
        let exceptions = s1
            .appearances
            .iter()
            .enumerate()
            .map(|(i, a)| ExceptionRecord {
                canonical: a.canonical.clone(),
                reference: a.reference,
                config: a.config_description.clone(),
                dot: to_dot(&a.graph, &exception_stem(a.reference, i)),
            })
            .collect();
        doc.timing
            .seconds
            .insert("statement1_stage1".into(), s1.report.wall_time.as_secs_f64());
        doc.timing
            .seconds
            .insert("statement1_stage2".into(), stage2.wall_time.as_secs_f64());
        doc.statement1 = Some(Statement1Section {
            stage1: s1.report,
            exceptions,
            stage2,
        });
    }
    doc.conclude();
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statement_names_roundtrip() {
        for s in [
            Statement::All,
            Statement::Fact,
            Statement::Regular,
            Statement::One,
            Statement::Two,
        ] {
            assert_eq!(s.to_string().parse::<Statement>().unwrap(), s);
        }
        assert!("3".parse::<Statement>().is_err());
    }

    #[test]
    fn validation() {
        let mut c = RunConfig::default();
        assert!(c.validate().is_ok());
        c.delta = 6;
        assert_eq!(c.validate(), Err(RunError::DeltaTooLarge(6)));
        c.delta = 3;
        c.jobs = 0;
        assert_eq!(c.validate(), Err(RunError::NoWorkers));
    }

    #[test]
    fn small_run_roundtrips() {
        let c = RunConfig {
            delta: 3,
            ..RunConfig::default()
        };
        let doc = run_verification(&c).unwrap();
        assert_eq!(doc.overall, Overall::Pass);
        assert!(doc.statement1.is_none());
        let back = CertificateDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back.to_json(), doc.to_json());
        let again = run_verification(&c).unwrap();
        assert_eq!(again.reproducible_json(), doc.reproducible_json());
    }

    #[test]
    fn starved_precision_is_undecided() {
        let c = RunConfig {
            delta: 3,
            precision: Precision::new(2, 2),
            ..RunConfig::default()
        };
        assert_eq!(run_verification(&c).unwrap().overall, Overall::Undecided);
    }
}
