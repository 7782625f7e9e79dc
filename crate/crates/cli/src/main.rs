//! `kahn`: runs the verification and checks individual graphs.
//!
//! Exit codes: 0 pass, 1 fail, 2 undecided, 3 input/internal error,
//! 4 maximum degree above 5.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use kahn_core::algebra::{Outcome, Precision};
use kahn_core::certificate::{run_verification, CertificateDocument, ExceptionRecord, RunConfig, RunError, Statement};
use kahn_core::good::{check_kahn_bound, find_good_vertex, is_good, GoodError, KahnReport, Probe, ProbeResult};
use kahn_core::selftest::{self, SuiteReport};
use kahn_core::Graph;

const EXIT_FAIL: u8 = 1;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_ERROR: u8 = 3;
const EXIT_DEGREE: u8 = 4;
const MAX_DEGREE: usize = 5;

#[derive(Parser)]
#[command(
    name = "kahn",
    version,
    about = "Verify the independent-set bound for graphs of maximum degree at most 5"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
    /// Starting interval precision in bits.
    #[arg(long, default_value_t = 128)]
    precision_bits: u32,
    /// Largest interval precision tried before giving up.
    #[arg(long, default_value_t = 8192)]
    precision_cap: u32,
    /// Write the JSON document here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the fact check, regular case and configuration searches.
    VerifyAll {
        #[command(flatten)]
        common: Common,
        /// Maximum degree covered (1 to 5).
        #[arg(long, default_value_t = 5)]
        delta: u8,
        /// Part to run: all, fact, regular, 1 or 2.
        #[arg(long, default_value = "all")]
        statement: Statement,
        /// Also write the exceptional drawings to this directory.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Count, bound and probe one graph given as an edge list.
    Check {
        #[command(flatten)]
        common: Common,
        /// Edge-list file.
        #[arg(long)]
        input: PathBuf,
    },
    /// Write one DOT drawing per exceptional appearance.
    ExportExceptions {
        #[command(flatten)]
        common: Common,
        /// Output directory (created if missing).
        #[arg(long, default_value = "exceptions")]
        dot: PathBuf,
    },
    /// Randomized property suites with a fixed seed.
    Selftest {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cases per suite.
        #[arg(long, default_value_t = 1000)]
        cases: u64,
    },
}

impl Common {
    /// A cap below the starting precision lowers the start to the cap.
    fn precision(&self) -> Result<Precision> {
        anyhow::ensure!(self.precision_cap >= 1, "--precision-cap must be at least 1");
        anyhow::ensure!(self.precision_bits >= 1, "--precision-bits must be at least 1");
        Ok(Precision::new(
            self.precision_bits.min(self.precision_cap),
            self.precision_cap,
        ))
    }

    fn jobs(&self) -> Result<usize> {
        let jobs = self
            .jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        anyhow::ensure!(jobs >= 1, "--jobs must be at least 1");
        Ok(jobs)
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs()?)
            .build()
            .context("starting worker pool")
    }
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).context("serializing JSON")?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

fn export_dots(dir: &Path, exceptions: &[ExceptionRecord]) -> Result<usize> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (i, e) in exceptions.iter().enumerate() {
        let path = dir.join(e.file_name(i));
        fs::write(&path, &e.dot).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(exceptions.len())
}

fn run_config(subcommand: &str, common: &Common, delta: u8, statement: Statement, seed: u64) -> Result<RunConfig> {
    Ok(RunConfig {
        subcommand: subcommand.to_string(),
        delta,
        statement,
        jobs: common.jobs()?,
        precision: common.precision()?,
        seed,
        input: None,
        json: common.json.as_ref().map(|p| p.display().to_string()),
        dot: None,
    })
}

fn verify(config: RunConfig, common: &Common) -> Result<std::result::Result<CertificateDocument, RunError>> {
    let pool = common.pool()?;
    Ok(pool.install(|| run_verification(&config)))
}

fn cmd_verify_all(common: Common, delta: u8, statement: Statement, dot: Option<PathBuf>, seed: u64) -> Result<u8> {
    if usize::from(delta) > MAX_DEGREE {
        eprintln!("maximum degree {delta} is beyond the verified range 1..={MAX_DEGREE}");
        return Ok(EXIT_DEGREE);
    }
    let mut config = run_config("verify-all", &common, delta, statement, seed)?;
    config.dot = dot.as_ref().map(|p| p.display().to_string());
    let doc = verify(config, &common)?.context("running verification")?;
    for line in doc.summary_lines() {
        println!("{line}");
    }
    for (name, secs) in &doc.timing.seconds {
        println!("  time {name}: {secs:.2}s");
    }
    if let Some(path) = &common.json {
        write_json(path, &doc)?;
    }
    if let (Some(dir), Some(s1)) = (&dot, &doc.statement1) {
        let n = export_dots(dir, &s1.exceptions)?;
        println!("wrote {n} drawings to {}", dir.display());
    }
    Ok(doc.overall.exit_code() as u8)
}

fn cmd_export(common: Common, dot: PathBuf) -> Result<u8> {
    // fail on an unusable directory before the search, not after
    fs::create_dir_all(&dot).with_context(|| format!("creating {}", dot.display()))?;
    let config = run_config("export-exceptions", &common, 5, Statement::One, 0)?;
    let doc = verify(config, &common)?.context("running the minimum-degree search")?;
    let s1 = doc.statement1.as_ref().context("no exceptional patterns produced")?;
    let n = export_dots(&dot, &s1.exceptions)?;
    println!("wrote {n} drawings to {}", dot.display());
    if let Some(path) = &common.json {
        write_json(path, &s1.exceptions)?;
    }
    Ok(if s1.stage1.pass { 0 } else { EXIT_FAIL })
}

#[derive(Serialize)]
struct VertexVerdict {
    vertex: usize,
    degree: usize,
    outcome: Outcome,
}

#[derive(Serialize)]
struct CheckReport {
    kahn: KahnReport,
    /// First vertex certified good by the probe order, if the graph is bipartite.
    good_vertex: Option<ProbeResult>,
    probes: Vec<ProbeResult>,
    vertices: Vec<VertexVerdict>,
    note: Option<String>,
}

fn probe_all(g: &Graph, precision: Precision) -> std::result::Result<Vec<ProbeResult>, GoodError> {
    let max_v = (0..g.n()).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)));
    let min_v = (0..g.n()).min_by_key(|&v| (g.degree(v), v));
    let mut out = Vec::new();
    let (Some(max_v), Some(min_v)) = (max_v, min_v) else {
        return Ok(out);
    };
    let mut candidates = vec![(max_v, Probe::MaxDegree), (min_v, Probe::MinDegree)];
    candidates.extend(g.neighbors(min_v).iter().map(|&w| (w, Probe::NeighborOfMinDegree)));
    for (vertex, probe) in candidates {
        let outcome = is_good(g, vertex, precision)?.outcome;
        out.push(ProbeResult { vertex, probe, outcome });
    }
    Ok(out)
}

fn cmd_check(common: Common, input: PathBuf) -> Result<u8> {
    let precision = common.precision()?;
    let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
    let g: Graph = text.parse().with_context(|| format!("parsing {}", input.display()))?;
    if g.max_degree() > MAX_DEGREE {
        eprintln!(
            "maximum degree {} exceeds {MAX_DEGREE}; the bound is only verified up to {MAX_DEGREE}",
            g.max_degree()
        );
        return Ok(EXIT_DEGREE);
    }
    let pool = common.pool()?;
    let report = pool.install(|| -> Result<CheckReport> {
        let kahn = check_kahn_bound(&g, precision).context("checking the bound")?;
        let mut report = CheckReport {
            kahn,
            good_vertex: None,
            probes: Vec::new(),
            vertices: Vec::new(),
            note: None,
        };
        if g.n() == 0 {
            report.note = Some("empty graph: no vertices to probe".into());
        } else if !g.is_bipartite() {
            report.note = Some("not bipartite: goodness is checked on bipartite graphs only".into());
        } else {
            report.probes = probe_all(&g, precision).context("probing vertices")?;
            let found = find_good_vertex(&g, precision).context("searching for a good vertex")?;
            report.good_vertex = found.trace.last().cloned();
            for v in 0..g.n() {
                report.vertices.push(VertexVerdict {
                    vertex: v,
                    degree: g.degree(v),
                    outcome: is_good(&g, v, precision).context("goodness")?.outcome,
                });
            }
        }
        Ok(report)
    })?;

    let k = &report.kahn;
    println!("vertices {}, edges {}", k.n, k.edges);
    println!("ind(G) = {}", k.ind);
    println!("Pi(G)  = {}  in [{}, {}]", k.pi, k.pi_enclosure[0], k.pi_enclosure[1]);
    let verdict = match k.outcome {
        Outcome::Equal => "ind(G) = Pi(G)",
        Outcome::StrictlyGreater => "ind(G) < Pi(G)",
        Outcome::StrictlyLess => "ind(G) > Pi(G)  (bound violated)",
        Outcome::Undecided => "undecided",
    };
    println!("bound: {verdict} [{:?}]", k.method);
    println!(
        "structure: bipartite {}, every component complete bipartite or a point {}",
        k.bipartite, k.extremal_structure
    );
    for p in &report.probes {
        println!(
            "probe {:?}: vertex {} is {}",
            p.probe,
            p.vertex,
            if p.outcome.holds() { "good" } else { "not good" }
        );
    }
    if let Some(v) = &report.good_vertex {
        println!("good vertex: {} ({:?}, {})", v.vertex, v.probe, v.outcome);
    }
    let bad: Vec<String> = report
        .vertices
        .iter()
        .filter(|v| !v.outcome.holds())
        .map(|v| v.vertex.to_string())
        .collect();
    if !report.vertices.is_empty() {
        if bad.is_empty() {
            println!("every vertex is good");
        } else {
            println!("vertices not good: {}", bad.join(" "));
        }
    }
    if let Some(n) = &report.note {
        println!("note: {n}");
    }
    if let Some(path) = &common.json {
        write_json(path, &report)?;
    }
    Ok(match k.outcome {
        Outcome::Equal | Outcome::StrictlyGreater => 0,
        Outcome::StrictlyLess => EXIT_FAIL,
        Outcome::Undecided => EXIT_UNDECIDED,
    })
}

fn cmd_selftest(common: Common, seed: u64, cases: u64) -> Result<u8> {
    let precision = common.precision()?;
    let pool = common.pool()?;
    let suites: Vec<SuiteReport> = pool.install(|| selftest::run_all(seed, cases, precision));
    for s in &suites {
        println!(
            "{}: {} ({} cases, {} failures)",
            s.name,
            if s.pass { "PASS" } else { "FAIL" },
            s.cases,
            s.failure_count
        );
        for f in &s.failures {
            println!("  {f}");
        }
    }
    if let Some(path) = &common.json {
        write_json(path, &suites)?;
    }
    Ok(if suites.iter().all(|s| s.pass) { 0 } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::VerifyAll {
            common,
            delta,
            statement,
            dot,
            seed,
        } => cmd_verify_all(common, delta, statement, dot, seed),
        Command::Check { common, input } => cmd_check(common, input),
        Command::ExportExceptions { common, dot } => cmd_export(common, dot),
        Command::Selftest { common, seed, cases } => cmd_selftest(common, seed, cases),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
