// SPDX-License-Identifier: Apache-2.0
//! C ABI for the agm runtime.
//!
//! Graphs and results are opaque handles owned by the caller and released with
//! the matching `*_free` function. Every fallible call returns an [`AgmStatus`];
//! on failure the message is available from [`agm_last_error`] on the same thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::io::BufReader;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use agm::algorithms::{BfsOrdering, BfsParams, PagerankParams, SsspOrdering, SsspParams};
use agm::cli::{execute, AlgorithmSpec};
use agm::graph::{generate_random, load_dimacs, load_edge_list};
use agm::{AgmError, Distribution, EngineConfig, Graph, GraphError, MonotonicityMode, Policy, RunResult, VertexId};

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    IoError = 4,
    ContractViolation = 5,
    OrderingViolation = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgmFormat {
    EdgeList = 0,
    Dimacs = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgmPolicy {
    Block = 0,
    Cyclic = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgmSsspOrdering {
    Dijkstra = 0,
    /// Uses the `delta` argument as bucket width.
    Delta = 1,
    Chaotic = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgmBfsOrdering {
    Level = 0,
    /// Uses the `k` argument as level-group width.
    Kla = 1,
}

/// Engine settings. `max_phases == 0` means unbounded.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct AgmRunOptions {
    pub ranks: u32,
    pub policy: AgmPolicy,
    pub seed: u64,
    pub strict: bool,
    pub max_phases: u64,
    pub parallel: bool,
}

/// Totals over a finished run.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AgmStats {
    pub phases: u64,
    pub productive_phases: u64,
    pub items_processed: u64,
    pub updates_applied: u64,
    pub updates_rejected: u64,
    pub remote_messages: u64,
    pub substeps: u64,
    pub monotonicity_violations: u64,
    pub truncated: bool,
    pub halted_by_observer: bool,
}

/// Opaque graph handle.
pub struct AgmGraph {
    inner: Graph,
}

/// Opaque run result: the per-vertex values of the algorithm's output state plus stats.
pub struct AgmResult {
    values: Vec<f64>,
    stats: AgmStats,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(AgmStatus, String);

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        let status = match e {
            GraphError::Parse { .. } | GraphError::Format(_) => AgmStatus::ParseError,
            GraphError::Validation(_) => AgmStatus::InvalidArgument,
            GraphError::Io(_) => AgmStatus::IoError,
        };
        Failure(status, e.to_string())
    }
}

impl From<AgmError> for Failure {
    fn from(e: AgmError) -> Self {
        match e {
            AgmError::Graph(g) => g.into(),
            AgmError::Parameter(_) => Failure(AgmStatus::InvalidArgument, e.to_string()),
            AgmError::Contract(_) => Failure(AgmStatus::ContractViolation, e.to_string()),
            AgmError::OrderingViolation { .. } => Failure(AgmStatus::OrderingViolation, e.to_string()),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(AgmStatus::InvalidArgument, msg.into())
}

fn null(what: &str) -> Failure {
    Failure(AgmStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status plus a thread-local message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> AgmStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AgmStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic in agm".to_string());
            set_last_error(msg);
            AgmStatus::Panic
        }
    }
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn graph_ref<'a>(g: *const AgmGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|g| &g.inner).ok_or_else(|| null("graph"))
}

/// Message for the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn agm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn agm_status_name(status: AgmStatus) -> *const c_char {
    let s: &'static CStr = match status {
        AgmStatus::Ok => c"ok",
        AgmStatus::NullPointer => c"null pointer",
        AgmStatus::InvalidArgument => c"invalid argument",
        AgmStatus::ParseError => c"parse error",
        AgmStatus::IoError => c"i/o error",
        AgmStatus::ContractViolation => c"contract violation",
        AgmStatus::OrderingViolation => c"ordering violation",
        AgmStatus::BufferTooSmall => c"buffer too small",
        AgmStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// Default options: one rank, block policy, seed 0, relaxed mode, no phase limit.
#[no_mangle]
pub extern "C" fn agm_run_options_default() -> AgmRunOptions {
    AgmRunOptions { ranks: 1, policy: AgmPolicy::Block, seed: 0, strict: false, max_phases: 0, parallel: false }
}

/// Builds a graph from `m` edges. `weights` may be NULL for an unweighted graph.
#[no_mangle]
pub unsafe extern "C" fn agm_graph_from_edges(
    n: u32,
    src: *const u32,
    dst: *const u32,
    weights: *const f64,
    m: usize,
    directed: bool,
    out: *mut *mut AgmGraph,
) -> AgmStatus {
    guard(|| {
        if m > 0 && (src.is_null() || dst.is_null()) {
            return Err(null("edge array"));
        }
        let edges: Vec<(u32, u32, f64)> =
            (0..m).map(|i| (*src.add(i), *dst.add(i), if weights.is_null() { 1.0 } else { *weights.add(i) })).collect();
        let g = Graph::from_edges(n as usize, &edges, directed, !weights.is_null())?;
        write_out(out, AgmGraph { inner: g })
    })
}

/// Loads a graph file. `directed` and `weighted` apply to edge lists only.
#[no_mangle]
pub unsafe extern "C" fn agm_graph_load(
    path: *const c_char,
    format: AgmFormat,
    directed: bool,
    weighted: bool,
    out: *mut *mut AgmGraph,
) -> AgmStatus {
    guard(|| {
        if path.is_null() {
            return Err(null("path"));
        }
        let path = CStr::from_ptr(path).to_str().map_err(|_| invalid("path is not UTF-8"))?;
        let file = File::open(path).map_err(|e| Failure(AgmStatus::IoError, format!("{path}: {e}")))?;
        let reader = BufReader::new(file);
        let g = match format {
            AgmFormat::EdgeList => load_edge_list(reader, directed, weighted)?,
            AgmFormat::Dimacs => load_dimacs(reader)?,
        };
        write_out(out, AgmGraph { inner: g })
    })
}

/// Seeded Erdős–Rényi graph with weights uniform on `[lo, hi]`.
#[no_mangle]
pub unsafe extern "C" fn agm_graph_generate(
    n: u32,
    p: f64,
    seed: u64,
    lo: f64,
    hi: f64,
    directed: bool,
    out: *mut *mut AgmGraph,
) -> AgmStatus {
    guard(|| {
        let g = generate_random(n as usize, p, seed, (lo, hi), directed)?;
        write_out(out, AgmGraph { inner: g })
    })
}

/// Vertex count, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn agm_graph_vertex_count(g: *const AgmGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.vertex_count())
}

/// Stored (directed) edge count, or 0 for NULL. Undirected edges count twice.
#[no_mangle]
pub unsafe extern "C" fn agm_graph_edge_count(g: *const AgmGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.edge_count())
}

#[no_mangle]
pub unsafe extern "C" fn agm_graph_free(g: *mut AgmGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

unsafe fn engine_config(opts: *const AgmRunOptions) -> Result<EngineConfig, Failure> {
    let o = if opts.is_null() { agm_run_options_default() } else { *opts };
    let policy = match o.policy {
        AgmPolicy::Block => Policy::Block,
        AgmPolicy::Cyclic => Policy::Cyclic,
    };
    Ok(EngineConfig {
        distribution: Distribution::new(o.ranks as usize, policy)?,
        shuffle_seed: o.seed,
        mode: if o.strict { MonotonicityMode::Strict } else { MonotonicityMode::Relaxed },
        max_phases: (o.max_phases > 0).then_some(o.max_phases as usize),
        parallel_ranks: o.parallel,
    })
}

fn summarize(spec: &AlgorithmSpec, r: RunResult) -> Result<AgmResult, Failure> {
    let t = r.stats.totals();
    let stats = AgmStats {
        phases: r.stats.phase_count() as u64,
        productive_phases: r.stats.productive_phase_count() as u64,
        items_processed: t.items_processed,
        updates_applied: t.updates_applied,
        updates_rejected: t.updates_rejected,
        remote_messages: t.remote_messages,
        substeps: t.substeps,
        monotonicity_violations: r.stats.monotonicity_violations,
        truncated: r.truncated,
        halted_by_observer: r.halted_by_observer,
    };
    let values = r.states.require(spec.state_name())?.to_vec();
    Ok(AgmResult { values, stats })
}

unsafe fn run_spec(
    g: *const AgmGraph,
    spec: AlgorithmSpec,
    opts: *const AgmRunOptions,
    out: *mut *mut AgmResult,
) -> Result<(), Failure> {
    let g = graph_ref(g)?;
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let config = engine_config(opts)?;
    let result = summarize(&spec, execute(&spec, g, &config)?)?;
    write_out(out, result)
}

/// Single-source shortest paths. Unreachable vertices hold `+inf`.
#[no_mangle]
pub unsafe extern "C" fn agm_run_sssp(
    g: *const AgmGraph,
    source: u32,
    ordering: AgmSsspOrdering,
    delta: u64,
    opts: *const AgmRunOptions,
    out: *mut *mut AgmResult,
) -> AgmStatus {
    guard(|| {
        let ordering = match ordering {
            AgmSsspOrdering::Dijkstra => SsspOrdering::Dijkstra,
            AgmSsspOrdering::Delta => SsspOrdering::Delta(delta),
            AgmSsspOrdering::Chaotic => SsspOrdering::Chaotic,
        };
        let spec = AlgorithmSpec::Sssp(SsspParams { source: VertexId(source), ordering });
        run_spec(g, spec, opts, out)
    })
}

/// Breadth-first levels. Unreachable vertices hold `+inf`.
#[no_mangle]
pub unsafe extern "C" fn agm_run_bfs(
    g: *const AgmGraph,
    source: u32,
    ordering: AgmBfsOrdering,
    k: u64,
    opts: *const AgmRunOptions,
    out: *mut *mut AgmResult,
) -> AgmStatus {
    guard(|| {
        let ordering = match ordering {
            AgmBfsOrdering::Level => BfsOrdering::Level,
            AgmBfsOrdering::Kla => BfsOrdering::Kla(k),
        };
        let spec = AlgorithmSpec::Bfs(BfsParams { source: VertexId(source), ordering });
        run_spec(g, spec, opts, out)
    })
}

/// PageRank. `iterative` selects the per-iteration class formulation with a
/// convergence observer; otherwise residual pushes ordered by descending residual.
#[no_mangle]
pub unsafe extern "C" fn agm_run_pagerank(
    g: *const AgmGraph,
    alpha: f64,
    epsilon: f64,
    iterative: bool,
    opts: *const AgmRunOptions,
    out: *mut *mut AgmResult,
) -> AgmStatus {
    guard(|| {
        let params = PagerankParams { alpha, epsilon };
        let spec = if iterative {
            AlgorithmSpec::PagerankIter(params)
        } else {
            AlgorithmSpec::Pagerank { params, chaotic: false }
        };
        run_spec(g, spec, opts, out)
    })
}

/// Connected components of an undirected graph; labels are minimum vertex ids.
#[no_mangle]
pub unsafe extern "C" fn agm_run_cc(
    g: *const AgmGraph,
    opts: *const AgmRunOptions,
    out: *mut *mut AgmResult,
) -> AgmStatus {
    guard(|| run_spec(g, AlgorithmSpec::Cc, opts, out))
}

/// Number of per-vertex values, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn agm_result_len(r: *const AgmResult) -> usize {
    r.as_ref().map_or(0, |r| r.values.len())
}

/// Copies the per-vertex values into `buf`, which must hold `agm_result_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn agm_result_values(r: *const AgmResult, buf: *mut f64, len: usize) -> AgmStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("result"))?;
        if len < r.values.len() {
            return Err(Failure(
                AgmStatus::BufferTooSmall,
                format!("buffer holds {len} values, result has {}", r.values.len()),
            ));
        }
        if buf.is_null() && !r.values.is_empty() {
            return Err(null("buffer"));
        }
        ptr::copy_nonoverlapping(r.values.as_ptr(), buf, r.values.len());
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn agm_result_stats(r: *const AgmResult, out: *mut AgmStats) -> AgmStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("result"))?;
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        *out = r.stats;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn agm_result_free(r: *mut AgmResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last_error() -> String {
        let p = agm_last_error();
        assert!(!p.is_null());
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }

    #[test]
    fn path_sssp_roundtrip() {
        let (src, dst, w) = ([0u32, 1], [1u32, 2], [1.0, 2.0]);
        let mut g = ptr::null_mut();
        let mut r = ptr::null_mut();
        unsafe {
            assert_eq!(
                agm_graph_from_edges(3, src.as_ptr(), dst.as_ptr(), w.as_ptr(), 2, false, &mut g),
                AgmStatus::Ok
            );
            assert_eq!(agm_graph_vertex_count(g), 3);
            assert_eq!(agm_graph_edge_count(g), 4);
            let status = agm_run_sssp(g, 0, AgmSsspOrdering::Dijkstra, 0, ptr::null(), &mut r);
            assert_eq!(status, AgmStatus::Ok);
            let mut vals = [0.0; 3];
            assert_eq!(agm_result_values(r, vals.as_mut_ptr(), 3), AgmStatus::Ok);
            assert_eq!(vals, [0.0, 1.0, 3.0]);
            assert_eq!(agm_result_values(r, vals.as_mut_ptr(), 2), AgmStatus::BufferTooSmall);
            let mut stats = AgmStats::default();
            assert_eq!(agm_result_stats(r, &mut stats), AgmStatus::Ok);
            assert_eq!(stats.productive_phases, 3);
            assert_eq!(stats.updates_applied + stats.updates_rejected, stats.items_processed);
            agm_result_free(r);
            agm_graph_free(g);
        }
    }

    #[test]
    fn errors_set_message() {
        let mut g = ptr::null_mut();
        unsafe {
            let (src, dst) = ([0u32], [5u32]);
            let s = agm_graph_from_edges(2, src.as_ptr(), dst.as_ptr(), ptr::null(), 1, true, &mut g);
            assert_eq!(s, AgmStatus::InvalidArgument);
            assert!(last_error().contains("out of range"));
            assert!(g.is_null());

            assert_eq!(agm_run_cc(ptr::null(), ptr::null(), &mut ptr::null_mut()), AgmStatus::NullPointer);

            assert_eq!(agm_graph_generate(10, 0.5, 1, 1.0, 1.0, true, &mut g), AgmStatus::Ok);
            let mut r = ptr::null_mut();
            assert_eq!(agm_run_cc(g, ptr::null(), &mut r), AgmStatus::InvalidArgument);
            assert!(r.is_null());
            let opts = AgmRunOptions { ranks: 0, ..agm_run_options_default() };
            assert_eq!(agm_run_bfs(g, 0, AgmBfsOrdering::Level, 0, &opts, &mut r), AgmStatus::InvalidArgument);
            assert_eq!(agm_run_bfs(g, 0, AgmBfsOrdering::Level, 0, ptr::null(), &mut r), AgmStatus::Ok);
            assert!(agm_last_error().is_null());
            agm_result_free(r);
            agm_graph_free(g);
        }
    }

    #[test]
    fn status_names() {
        let name = unsafe { CStr::from_ptr(agm_status_name(AgmStatus::BufferTooSmall)) };
        assert_eq!(name.to_str().unwrap(), "buffer too small");
    }
}
