// SPDX-License-Identifier: Apache-2.0
//! Command-line front end: `run`, `verify` and `sweep`.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::algorithms::{
    bfs_instance, cc_instance, iterative_pagerank_instance, pagerank_instance, sssp_instance, BfsOrdering, BfsParams,
    PagerankParams, SsspOrdering, SsspParams,
};
use crate::engine::{run, EngineConfig, EngineStats, MonotonicityMode, RunResult};
use crate::error::AgmError;
use crate::graph::{load_dimacs, load_edge_list, Distribution, Graph, Policy, VertexId};
use crate::machine::{make_ordering, FinalMap, OrderingKind, ScalarKind};
use crate::oracles::{oracle_bfs, oracle_components, oracle_dijkstra, oracle_pagerank_power};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Agm(#[from] AgmError),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl From<crate::error::GraphError> for CliError {
    fn from(e: crate::error::GraphError) -> Self {
        CliError::Agm(e.into())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Debug, Parser)]
#[command(name = "agm", version, about = "Run ordered graph algorithms on the abstract graph machine")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an algorithm and write per-vertex results and statistics.
    Run(RunArgs),
    /// Run an algorithm and compare it against its sequential oracle.
    Verify(VerifyArgs),
    /// Run one configuration per parameter value and emit a statistics table.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Sssp,
    Bfs,
    Pagerank,
    PagerankIter,
    Cc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Edgelist,
    Dimacs,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub algorithm: Algorithm,
    /// dijkstra | delta | level | kla | residual | component | chaotic
    #[arg(long)]
    pub ordering: Option<String>,
    /// Bucket width for the delta ordering; `inf` selects the chaotic ordering.
    #[arg(long)]
    pub delta: Option<String>,
    /// Level-group width for the kla ordering.
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub source: Option<u32>,
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value = "edgelist")]
    pub format: GraphFormat,
    /// Treat an edge list as directed (DIMACS input is always directed).
    #[arg(long)]
    pub directed: bool,
    /// Read a third column of edge weights from an edge list.
    #[arg(long)]
    pub weighted: bool,
    #[arg(long, default_value_t = 1)]
    pub ranks: usize,
    #[arg(long, default_value = "block")]
    pub policy: Policy,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "relaxed")]
    pub mode: MonotonicityMode,
    #[arg(long)]
    pub max_phases: Option<usize>,
    /// Per-vertex result TSV (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-phase statistics CSV.
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// Execute the ranks of each sub-step concurrently.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Allowed absolute error for PageRank.
    #[arg(long, default_value_t = DEFAULT_PAGERANK_TOLERANCE)]
    pub tolerance: f64,
    /// Test hook: perturb one engine result before comparing.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// `delta=1,2,4,inf`, `k=1,2,4` or `ranks=1,2,4`.
    #[arg(long)]
    pub sweep: String,
}

pub const DEFAULT_PAGERANK_TOLERANCE: f64 = 1e-6;
pub const ORACLE_PAGERANK_TOLERANCE: f64 = 1e-12;

/// A validated algorithm selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlgorithmSpec {
    Sssp(SsspParams),
    Bfs(BfsParams),
    Pagerank { params: PagerankParams, chaotic: bool },
    PagerankIter(PagerankParams),
    Cc,
}

impl AlgorithmSpec {
    /// Name of the state map reported per vertex.
    pub fn state_name(&self) -> &'static str {
        match self {
            AlgorithmSpec::Sssp(_) => "distance",
            AlgorithmSpec::Bfs(_) => "vertex_level",
            AlgorithmSpec::Pagerank { .. } | AlgorithmSpec::PagerankIter(_) => "rank",
            AlgorithmSpec::Cc => "component",
        }
    }

    fn is_pagerank(&self) -> bool {
        matches!(self, AlgorithmSpec::Pagerank { .. } | AlgorithmSpec::PagerankIter(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphSource {
    pub path: PathBuf,
    pub format: GraphFormat,
    pub directed: bool,
    pub weighted: bool,
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph, CliError> {
        let file =
            File::open(&self.path).map_err(|source| CliError::Io { path: self.path.display().to_string(), source })?;
        let reader = BufReader::new(file);
        let g = match self.format {
            GraphFormat::Edgelist => load_edge_list(reader, self.directed, self.weighted)?,
            GraphFormat::Dimacs => load_dimacs(reader)?,
        };
        Ok(g)
    }
}

/// Everything `run`, `verify` and `sweep` need, validated.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub algorithm: AlgorithmSpec,
    pub graph: GraphSource,
    pub engine: EngineConfig,
    pub out: Option<PathBuf>,
    pub stats: Option<PathBuf>,
}

fn parse_delta(s: &str) -> Result<Option<u64>, CliError> {
    if s == "inf" {
        return Ok(None);
    }
    match s.parse::<u64>() {
        Ok(d) if d >= 1 => Ok(Some(d)),
        _ => usage(format!("--delta expects an integer >= 1 or 'inf', got '{s}'")),
    }
}

impl RunSpec {
    pub fn from_args(a: &RunArgs) -> Result<Self, CliError> {
        let name = a.ordering.as_deref();
        let uses_source = matches!(a.algorithm, Algorithm::Sssp | Algorithm::Bfs);
        if a.source.is_some() && !uses_source {
            return usage("--source applies only to sssp and bfs");
        }
        let is_pr = matches!(a.algorithm, Algorithm::Pagerank | Algorithm::PagerankIter);
        if (a.alpha.is_some() || a.epsilon.is_some()) && !is_pr {
            return usage("--alpha and --epsilon apply only to pagerank");
        }
        if a.delta.is_some() && !(a.algorithm == Algorithm::Sssp && matches!(name, None | Some("delta"))) {
            return usage("--delta is valid only with sssp --ordering delta");
        }
        if a.k.is_some() && !(a.algorithm == Algorithm::Bfs && name == Some("kla")) {
            return usage("--k is valid only with bfs --ordering kla");
        }
        let source = VertexId(a.source.unwrap_or(0));
        let params = PagerankParams { alpha: a.alpha.unwrap_or(0.85), epsilon: a.epsilon.unwrap_or(1e-9) };
        let algorithm = match a.algorithm {
            Algorithm::Sssp => {
                let ordering = match (name, a.delta.as_deref()) {
                    (None, None) | (Some("dijkstra"), _) => SsspOrdering::Dijkstra,
                    (None | Some("delta"), Some(d)) => match parse_delta(d)? {
                        Some(d) => SsspOrdering::Delta(d),
                        None => SsspOrdering::Chaotic,
                    },
                    (Some("delta"), None) => return usage("--ordering delta needs --delta"),
                    (Some("chaotic"), _) => SsspOrdering::Chaotic,
                    (Some(o), _) => return usage(format!("ordering '{o}' is not available for sssp")),
                };
                AlgorithmSpec::Sssp(SsspParams { source, ordering })
            }
            Algorithm::Bfs => {
                let ordering = match name {
                    None | Some("level") => BfsOrdering::Level,
                    Some("kla") => match a.k {
                        Some(k) if k >= 1 => BfsOrdering::Kla(k),
                        _ => return usage("--ordering kla needs --k >= 1"),
                    },
                    Some(o) => return usage(format!("ordering '{o}' is not available for bfs")),
                };
                AlgorithmSpec::Bfs(BfsParams { source, ordering })
            }
            Algorithm::Pagerank => {
                let chaotic = match name {
                    None | Some("residual") => false,
                    Some("chaotic") => true,
                    Some(o) => return usage(format!("ordering '{o}' is not available for pagerank")),
                };
                AlgorithmSpec::Pagerank { params, chaotic }
            }
            Algorithm::PagerankIter => {
                if name.is_some() {
                    return usage("pagerank-iter orders by iteration; --ordering is not accepted");
                }
                AlgorithmSpec::PagerankIter(params)
            }
            Algorithm::Cc => {
                if !matches!(name, None | Some("component")) {
                    return usage("cc uses the component ordering");
                }
                AlgorithmSpec::Cc
            }
        };
        if a.format == GraphFormat::Dimacs && (a.directed || a.weighted) {
            return usage("--directed/--weighted apply to edge lists; DIMACS input is directed and weighted");
        }
        let distribution = Distribution::new(a.ranks, a.policy).map_err(|e| CliError::Usage(e.to_string()))?;
        if a.max_phases == Some(0) {
            return usage("--max-phases must be at least 1");
        }
        Ok(RunSpec {
            algorithm,
            graph: GraphSource {
                path: a.graph.clone(),
                format: a.format,
                directed: a.directed || a.format == GraphFormat::Dimacs,
                weighted: a.weighted || a.format == GraphFormat::Dimacs,
            },
            engine: EngineConfig {
                distribution,
                shuffle_seed: a.seed,
                mode: a.mode,
                max_phases: a.max_phases,
                parallel_ranks: a.parallel,
            },
            out: a.out.clone(),
            stats: a.stats.clone(),
        })
    }
}

/// Builds the instance for `algorithm` on `g` and runs it.
pub fn execute(algorithm: &AlgorithmSpec, g: &Graph, config: &EngineConfig) -> Result<RunResult, AgmError> {
    match algorithm {
        AlgorithmSpec::Sssp(p) => run(&sssp_instance(g, p)?, config, None),
        AlgorithmSpec::Bfs(p) => run(&bfs_instance(g, p)?, config, None),
        AlgorithmSpec::Pagerank { params, chaotic } => {
            let mut inst = pagerank_instance(g, params)?;
            if *chaotic {
                inst = inst.with_ordering(make_ordering(OrderingKind::Chaotic)?);
            }
            run(&inst, config, None)
        }
        AlgorithmSpec::PagerankIter(p) => {
            let (inst, mut observer) = iterative_pagerank_instance(g, p)?;
            run(&inst, config, Some(&mut observer))
        }
        AlgorithmSpec::Cc => run(&cc_instance(g)?, config, None),
    }
}

fn format_value(kind: ScalarKind, x: f64) -> String {
    if x.is_infinite() && x > 0.0 {
        "inf".to_string()
    } else if kind == ScalarKind::Int {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

/// `vertex\t<name>` followed by one row per vertex.
pub fn results_tsv(map: &FinalMap) -> String {
    let mut s = format!("vertex\t{}\n", map.decl.name);
    for (v, x) in map.values.iter().enumerate() {
        let _ = writeln!(s, "{v}\t{}", format_value(map.decl.kind, *x));
    }
    s
}

/// Per-phase rows, a `total` row, then `violations=<n>`.
pub fn stats_csv(stats: &EngineStats) -> String {
    let mut s = String::from("phase,items,applied,rejected,remote_msgs,substeps\n");
    for (i, p) in stats.phases.iter().enumerate() {
        let _ = writeln!(
            s,
            "{i},{},{},{},{},{}",
            p.items_processed, p.updates_applied, p.updates_rejected, p.remote_messages, p.substeps
        );
    }
    let t = stats.totals();
    let _ = writeln!(
        s,
        "total,{},{},{},{},{}",
        t.items_processed, t.updates_applied, t.updates_rejected, t.remote_messages, t.substeps
    );
    let _ = writeln!(s, "violations={}", stats.monotonicity_violations);
    s
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    let res = match path {
        Some(p) => std::fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    res.map_err(|source| CliError::Io {
        path: path.map_or_else(|| "<stdout>".to_string(), |p| p.display().to_string()),
        source,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub result: RunResult,
    pub vertex_count: usize,
}

impl RunReport {
    pub fn truncated(&self) -> bool {
        self.result.truncated
    }
}

/// Loads the graph, runs the algorithm and writes the TSV and stats outputs.
pub fn cmd_run(spec: &RunSpec) -> Result<RunReport, CliError> {
    let g = spec.graph.load()?;
    let result = execute(&spec.algorithm, &g, &spec.engine)?;
    let map = result
        .states
        .map(spec.algorithm.state_name())
        .ok_or_else(|| AgmError::Contract("result state missing".into()))?;
    write_output(spec.out.as_deref(), &results_tsv(map))?;
    if let Some(path) = &spec.stats {
        write_output(Some(path), &stats_csv(&result.stats))?;
    }
    Ok(RunReport { result, vertex_count: g.vertex_count() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mismatch {
    pub vertex: usize,
    pub got: f64,
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub mismatch: Option<Mismatch>,
    /// Largest absolute difference over finite entries.
    pub max_abs_error: f64,
    pub vertex_count: usize,
}

fn oracle_for(algorithm: &AlgorithmSpec, g: &Graph) -> Result<Vec<f64>, AgmError> {
    Ok(match algorithm {
        AlgorithmSpec::Sssp(p) => oracle_dijkstra(g, p.source)?,
        AlgorithmSpec::Bfs(p) => oracle_bfs(g, p.source)?,
        AlgorithmSpec::Pagerank { params, .. } | AlgorithmSpec::PagerankIter(params) => {
            oracle_pagerank_power(g, params.alpha, ORACLE_PAGERANK_TOLERANCE)?.ranks
        }
        AlgorithmSpec::Cc => oracle_components(g)?.into_iter().map(f64::from).collect(),
    })
}

/// Compares engine values against oracle values; `tolerance = 0` demands equality.
pub fn compare_values(got: &[f64], expected: &[f64], tolerance: f64) -> (Option<Mismatch>, f64) {
    let mut first = None;
    let mut max_err = 0.0f64;
    for (v, (&a, &b)) in got.iter().zip(expected).enumerate() {
        let ok = if a.is_infinite() || b.is_infinite() {
            a == b
        } else {
            let err = (a - b).abs();
            max_err = max_err.max(err);
            err <= tolerance
        };
        if !ok && first.is_none() {
            first = Some(Mismatch { vertex: v, got: a, expected: b });
        }
    }
    if got.len() != expected.len() && first.is_none() {
        let v = got.len().min(expected.len());
        first = Some(Mismatch { vertex: v, got: f64::NAN, expected: f64::NAN });
    }
    (first, max_err)
}

pub fn cmd_verify(spec: &RunSpec, tolerance: f64, inject_fault: bool) -> Result<VerifyReport, CliError> {
    let g = spec.graph.load()?;
    let result = execute(&spec.algorithm, &g, &spec.engine)?;
    if result.truncated {
        return usage("run was truncated by --max-phases; nothing to verify");
    }
    let mut got = result.states.require(spec.algorithm.state_name())?.to_vec();
    if inject_fault {
        if let Some(x) = got.iter_mut().find(|x| x.is_finite()) {
            *x += 1.0;
        }
    }
    let expected = oracle_for(&spec.algorithm, &g)?;
    let tol = if spec.algorithm.is_pagerank() { tolerance } else { 0.0 };
    let (mismatch, max_abs_error) = compare_values(&got, &expected, tol);
    Ok(VerifyReport { mismatch, max_abs_error, vertex_count: g.vertex_count() })
}

/// Parameter varied by `sweep`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sweep {
    /// `None` is the unbounded bucket, i.e. the chaotic ordering.
    Delta(Vec<Option<u64>>),
    K(Vec<u64>),
    Ranks(Vec<usize>),
}

impl Sweep {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let Some((param, list)) = text.split_once('=') else {
            return usage(format!("--sweep expects <param>=<v1,v2,...>, got '{text}'"));
        };
        let items: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        if items.is_empty() {
            return usage("--sweep needs at least one value");
        }
        let int = |s: &str| -> Result<u64, CliError> {
            match s.parse::<u64>() {
                Ok(x) if x >= 1 => Ok(x),
                _ => usage(format!("sweep value '{s}' must be an integer >= 1")),
            }
        };
        match param {
            "delta" => Ok(Sweep::Delta(items.into_iter().map(parse_delta).collect::<Result<_, _>>()?)),
            "k" => Ok(Sweep::K(items.into_iter().map(int).collect::<Result<_, _>>()?)),
            "ranks" => {
                Ok(Sweep::Ranks(items.into_iter().map(|s| int(s).map(|x| x as usize)).collect::<Result<_, _>>()?))
            }
            other => usage(format!("unknown sweep parameter '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param: String,
    pub phases: usize,
    pub total_items: u64,
    pub total_applied: u64,
    pub total_rejected: u64,
    pub total_remote: u64,
    pub violations: u64,
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("param,phases,total_items,total_applied,total_rejected,total_remote,violations\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.param, r.phases, r.total_items, r.total_applied, r.total_rejected, r.total_remote, r.violations
        );
    }
    s
}

/// Runs one configuration per sweep value. The CSV goes to `--out` (or stdout).
/// `phases` counts phases that applied at least one update.
pub fn cmd_sweep(spec: &RunSpec, sweep: &Sweep) -> Result<Vec<SweepRow>, CliError> {
    let g = spec.graph.load()?;
    let mut configs: Vec<(String, AlgorithmSpec, EngineConfig)> = Vec::new();
    match (sweep, &spec.algorithm) {
        (Sweep::Delta(values), AlgorithmSpec::Sssp(p)) => {
            for d in values {
                let ordering = d.map_or(SsspOrdering::Chaotic, SsspOrdering::Delta);
                let label = d.map_or_else(|| "inf".to_string(), |d| d.to_string());
                configs.push((label, AlgorithmSpec::Sssp(SsspParams { ordering, ..*p }), spec.engine));
            }
        }
        (Sweep::K(values), AlgorithmSpec::Bfs(p)) => {
            for &k in values {
                let alg = AlgorithmSpec::Bfs(BfsParams { ordering: BfsOrdering::Kla(k), ..*p });
                configs.push((k.to_string(), alg, spec.engine));
            }
        }
        (Sweep::Ranks(values), alg) => {
            for &r in values {
                let distribution = Distribution::new(r, spec.engine.distribution.policy())?;
                configs.push((r.to_string(), *alg, EngineConfig { distribution, ..spec.engine }));
            }
        }
        (Sweep::Delta(_), _) => return usage("a delta sweep needs --algorithm sssp"),
        (Sweep::K(_), _) => return usage("a k sweep needs --algorithm bfs"),
    }
    let mut rows = Vec::with_capacity(configs.len());
    for (param, alg, config) in configs {
        let result = execute(&alg, &g, &config)?;
        if result.truncated {
            return usage(format!("sweep value {param} was truncated by --max-phases"));
        }
        let t = result.stats.totals();
        rows.push(SweepRow {
            param,
            phases: result.stats.productive_phase_count(),
            total_items: t.items_processed,
            total_applied: t.updates_applied,
            total_rejected: t.updates_rejected,
            total_remote: t.remote_messages,
            violations: result.stats.monotonicity_violations,
        });
    }
    write_output(spec.out.as_deref(), &sweep_csv(&rows))?;
    Ok(rows)
}

/// Exit status for the `agm` binary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Error = 1,
    Mismatch = 3,
    Truncated = 4,
}

/// Dispatches a parsed command line, printing diagnostics to stderr.
pub fn main_with(cli: Cli) -> Exit {
    let outcome = match cli.command {
        Command::Run(args) => RunSpec::from_args(&args).and_then(|spec| cmd_run(&spec)).map(|report| {
            if report.truncated() {
                eprintln!(
                    "error: run truncated after {} phases (--max-phases); results are partial",
                    report.result.stats.phase_count()
                );
                Exit::Truncated
            } else {
                Exit::Ok
            }
        }),
        Command::Verify(args) => RunSpec::from_args(&args.run)
            .and_then(|spec| cmd_verify(&spec, args.tolerance, args.inject_fault))
            .map(|report| match report.mismatch {
                None => {
                    println!("ok: {} vertices match (max abs error {:e})", report.vertex_count, report.max_abs_error);
                    Exit::Ok
                }
                Some(m) => {
                    eprintln!("mismatch at vertex {}: got {}, expected {}", m.vertex, m.got, m.expected);
                    Exit::Mismatch
                }
            }),
        Command::Sweep(args) => RunSpec::from_args(&args.run)
            .and_then(|spec| Sweep::parse(&args.sweep).and_then(|sw| cmd_sweep(&spec, &sw)))
            .map(|_| Exit::Ok),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        Exit::Error
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(extra: &[&str]) -> Result<RunSpec, CliError> {
        let mut argv = vec!["agm", "run", "--graph", "g.txt"];
        argv.extend_from_slice(extra);
        match Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.to_string()))?.command {
            Command::Run(a) => RunSpec::from_args(&a),
            _ => unreachable!(),
        }
    }

    #[test]
    fn ordering_flags() {
        let s = args(&["--algorithm", "sssp", "--ordering", "delta", "--delta", "3"]).unwrap();
        assert_eq!(
            s.algorithm,
            AlgorithmSpec::Sssp(SsspParams { source: VertexId(0), ordering: SsspOrdering::Delta(3) })
        );
        let s = args(&["--algorithm", "sssp", "--delta", "inf"]).unwrap();
        assert!(matches!(s.algorithm, AlgorithmSpec::Sssp(SsspParams { ordering: SsspOrdering::Chaotic, .. })));
        let s = args(&["--algorithm", "bfs", "--ordering", "kla", "--k", "2", "--source", "4"]).unwrap();
        assert_eq!(s.algorithm, AlgorithmSpec::Bfs(BfsParams { source: VertexId(4), ordering: BfsOrdering::Kla(2) }));
    }

    #[test]
    fn incompatible_flags_rejected() {
        assert!(args(&["--algorithm", "bfs", "--delta", "3"]).is_err());
        assert!(args(&["--algorithm", "sssp", "--ordering", "dijkstra", "--delta", "3"]).is_err());
        assert!(args(&["--algorithm", "sssp", "--k", "3"]).is_err());
        assert!(args(&["--algorithm", "cc", "--source", "1"]).is_err());
        assert!(args(&["--algorithm", "sssp", "--alpha", "0.5"]).is_err());
        assert!(args(&["--algorithm", "bfs", "--ordering", "kla"]).is_err());
        assert!(args(&["--algorithm", "sssp", "--delta", "0"]).is_err());
        assert!(args(&["--algorithm", "pagerank-iter", "--ordering", "residual"]).is_err());
        assert!(args(&["--algorithm", "sssp", "--ranks", "0"]).is_err());
        assert!(args(&["--algorithm", "sssp", "--format", "dimacs", "--directed"]).is_err());
    }

    #[test]
    fn sweep_parsing() {
        assert_eq!(Sweep::parse("delta=1,4,inf").unwrap(), Sweep::Delta(vec![Some(1), Some(4), None]));
        assert_eq!(Sweep::parse("k=1,2").unwrap(), Sweep::K(vec![1, 2]));
        assert_eq!(Sweep::parse("ranks=1, 2,4").unwrap(), Sweep::Ranks(vec![1, 2, 4]));
        assert!(Sweep::parse("delta").is_err());
        assert!(Sweep::parse("alpha=0.1").is_err());
        assert!(Sweep::parse("k=0").is_err());
    }

    #[test]
    fn value_formatting() {
        assert_eq!(format_value(ScalarKind::Real, f64::INFINITY), "inf");
        assert_eq!(format_value(ScalarKind::Int, 3.0), "3");
        assert_eq!(format_value(ScalarKind::Real, 2.5), "2.5");
    }

    #[test]
    fn comparison() {
        let (m, _) = compare_values(&[0.0, f64::INFINITY], &[0.0, f64::INFINITY], 0.0);
        assert!(m.is_none());
        let (m, _) = compare_values(&[0.0, 2.0], &[0.0, 1.0], 0.0);
        assert_eq!(m, Some(Mismatch { vertex: 1, got: 2.0, expected: 1.0 }));
        let (m, err) = compare_values(&[1.0 + 1e-7], &[1.0], 1e-6);
        assert!(m.is_none() && err > 0.0);
    }
}
