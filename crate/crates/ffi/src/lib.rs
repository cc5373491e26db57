//! C interface to `sbmcd`.
//!
//! Graphs and query-loop results are opaque handles created and released by
//! this library. Every fallible call returns an [`SbmcdStatus`]; on failure a
//! description is available from [`sbmcd_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sbmcd::{
    accuracy, active_loop, random_baseline_loop, read_edge_list, sbm_sample, semi_supervised,
    ActiveConfig, DiscreteLabeling, Error, Graph, GroundTruth, ModifiedAdjacency, QueryLog,
    SbmParams, SolverConfig,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbmcdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    ParseError = 3,
    InvalidInput = 4,
    SizeCapExceeded = 5,
    InvalidState = 6,
    IoError = 7,
    Panic = 8,
}

/// A graph, optionally with ground-truth labels.
pub struct SbmcdGraph {
    graph: Graph,
    truth: Option<GroundTruth>,
}

/// Outcome of a query loop.
pub struct SbmcdRun {
    labeling: DiscreteLabeling,
    log: QueryLog,
    accuracy: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SbmcdStatus {
    match e.root() {
        Error::Parameter(_) => SbmcdStatus::InvalidParameter,
        Error::Parse { .. } => SbmcdStatus::ParseError,
        Error::SizeCap { .. } => SbmcdStatus::SizeCapExceeded,
        Error::State(_) => SbmcdStatus::InvalidState,
        Error::Io { .. } => SbmcdStatus::IoError,
        _ => SbmcdStatus::InvalidInput,
    }
}

struct Failure(SbmcdStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SbmcdStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SbmcdStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SbmcdStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SbmcdStatus::Panic
        }
    }
}

unsafe fn slice<'a, T>(data: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn path<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SbmcdStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn graph_ref<'a>(graph: *const SbmcdGraph) -> Result<&'a SbmcdGraph, Failure> {
    graph.as_ref().ok_or_else(|| null("graph"))
}

fn emit<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

/// Message for the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn sbmcd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a graph on `n` nodes from `n_edges` pairs stored as
/// `edges[2k], edges[2k + 1]`. Self-loops and duplicates are dropped.
/// `labels` (length `n`, values below `r`) may be null when there is no
/// ground truth, in which case `r` is ignored.
///
/// # Safety
/// `edges` must point to `2 * n_edges` values and `labels`, if non-null, to `n`.
#[no_mangle]
pub unsafe extern "C" fn sbmcd_graph_from_edges(
    n: usize,
    edges: *const usize,
    n_edges: usize,
    labels: *const usize,
    r: usize,
    out: *mut *mut SbmcdGraph,
) -> SbmcdStatus {
    guard(|| {
        let flat = slice(edges, 2 * n_edges, "edges")?;
        let pairs = flat.chunks_exact(2).map(|p| (p[0], p[1]));
        let (graph, _) = Graph::from_edges(n, pairs)?;
        let truth = if labels.is_null() {
            None
        } else {
            Some(GroundTruth::new(slice(labels, n, "labels")?.to_vec(), r)?)
        };
        emit(out, SbmcdGraph { graph, truth })
    })
}

/// Samples a stochastic block model graph together with its planted labels.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sbmcd_graph_sample(
    n: usize,
    r: usize,
    p: f64,
    q: f64,
    seed: u64,
    out: *mut *mut SbmcdGraph,
) -> SbmcdStatus {
    guard(|| {
        let params = SbmParams::new(n, r, p, q)?;
        let (graph, truth) = sbm_sample(&params, seed)?;
        emit(
            out,
            SbmcdGraph {
                graph,
                truth: Some(truth),
            },
        )
    })
}

/// Reads an edge list and a label file. `r == 0` infers the label count.
///
/// # Safety
/// Paths must be NUL-terminated strings; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sbmcd_graph_read(
    edges_path: *const c_char,
    labels_path: *const c_char,
    r: usize,
    out: *mut *mut SbmcdGraph,
) -> SbmcdStatus {
    guard(|| {
        let edges = path(edges_path, "edges path")?;
        let labels = path(labels_path, "labels path")?;
        let ingested = read_edge_list(edges, labels, (r > 0).then_some(r))?;
        emit(
            out,
            SbmcdGraph {
                graph: ingested.graph,
                truth: Some(ingested.truth),
            },
        )
    })
}

/// Number of nodes, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sbmcd_graph_node_count(graph: *const SbmcdGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.n())
}

/// Number of distinct edges, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sbmcd_graph_edge_count(graph: *const SbmcdGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.edge_count())
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `graph` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sbmcd_graph_free(graph: *mut SbmcdGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Relax-and-round with `n_pins` supervised nodes; writes one label per node
/// into `labels_out` (length = node count).
///
/// # Safety
/// `pin_nodes` and `pin_labels` must hold `n_pins` values; `labels_out` must
/// have room for every node.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn sbmcd_semi_supervised(
    graph: *const SbmcdGraph,
    p: f64,
    q: f64,
    r: usize,
    pin_nodes: *const usize,
    pin_labels: *const usize,
    n_pins: usize,
    seed: u64,
    labels_out: *mut usize,
) -> SbmcdStatus {
    guard(|| {
        let g = graph_ref(graph)?;
        let nodes = slice(pin_nodes, n_pins, "pin nodes")?;
        let labels = slice(pin_labels, n_pins, "pin labels")?;
        if labels_out.is_null() {
            return Err(null("labels_out"));
        }
        let pins: Vec<(usize, usize)> = nodes.iter().copied().zip(labels.iter().copied()).collect();
        let m = ModifiedAdjacency::new(g.graph.clone(), p, q);
        let cfg = SolverConfig {
            seed,
            ..SolverConfig::default()
        };
        let out = semi_supervised(&m, &pins, r, &cfg)?;
        let dest = std::slice::from_raw_parts_mut(labels_out, g.graph.n());
        dest.copy_from_slice(out.labeling.assignments());
        Ok(())
    })
}

/// Which query rule [`sbmcd_query_loop`] uses.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbmcdStrategy {
    Active = 0,
    Random = 1,
}

/// Runs `budget` queries against the graph's ground truth and a final
/// semi-supervised solve. The graph must carry labels.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sbmcd_query_loop(
    graph: *const SbmcdGraph,
    p: f64,
    q: f64,
    budget: usize,
    strategy: SbmcdStrategy,
    seed: u64,
    out: *mut *mut SbmcdRun,
) -> SbmcdStatus {
    guard(|| {
        let g = graph_ref(graph)?;
        let truth = g.truth.as_ref().ok_or_else(|| {
            Failure(SbmcdStatus::InvalidState, "graph has no ground-truth labels".into())
        })?;
        let m = ModifiedAdjacency::new(g.graph.clone(), p, q);
        let cfg = ActiveConfig {
            solver: SolverConfig {
                seed,
                ..SolverConfig::default()
            },
            ..ActiveConfig::default()
        };
        let outcome = match strategy {
            SbmcdStrategy::Active => active_loop(&m, truth, budget, &cfg, &[])?,
            SbmcdStrategy::Random => random_baseline_loop(&m, truth, budget, seed, &cfg.solver)?,
        };
        let mut queried = vec![false; m.n()];
        outcome.log.records().iter().for_each(|r| queried[r.node] = true);
        let acc = accuracy(&outcome.labeling, truth, &queried)?;
        emit(
            out,
            SbmcdRun {
                labeling: outcome.labeling,
                log: outcome.log,
                accuracy: acc,
            },
        )
    })
}

/// Accuracy on the non-queried nodes, or NaN for a null handle.
///
/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sbmcd_run_accuracy(run: *const SbmcdRun) -> f64 {
    run.as_ref().map_or(f64::NAN, |r| r.accuracy)
}

/// Number of queries made, or 0 for a null handle.
///
/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sbmcd_run_query_count(run: *const SbmcdRun) -> usize {
    run.as_ref().map_or(0, |r| r.log.len())
}

/// Copies the queried nodes and their revealed labels, in query order, into
/// arrays of length `capacity` (which must be at least the query count).
///
/// # Safety
/// Both output arrays must have room for `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn sbmcd_run_queries(
    run: *const SbmcdRun,
    nodes_out: *mut usize,
    labels_out: *mut usize,
    capacity: usize,
) -> SbmcdStatus {
    guard(|| {
        let run = run.as_ref().ok_or_else(|| null("run"))?;
        let records = run.log.records();
        if capacity < records.len() {
            return Err(Failure(
                SbmcdStatus::InvalidParameter,
                format!("capacity {capacity} below query count {}", records.len()),
            ));
        }
        if records.is_empty() {
            return Ok(());
        }
        if nodes_out.is_null() || labels_out.is_null() {
            return Err(null("output array"));
        }
        for (k, rec) in records.iter().enumerate() {
            *nodes_out.add(k) = rec.node;
            *labels_out.add(k) = rec.label;
        }
        Ok(())
    })
}

/// Copies the final label of every node into `labels_out` (length `capacity`).
///
/// # Safety
/// `labels_out` must have room for `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn sbmcd_run_labels(
    run: *const SbmcdRun,
    labels_out: *mut usize,
    capacity: usize,
) -> SbmcdStatus {
    guard(|| {
        let run = run.as_ref().ok_or_else(|| null("run"))?;
        let labels = run.labeling.assignments();
        if capacity < labels.len() {
            return Err(Failure(
                SbmcdStatus::InvalidParameter,
                format!("capacity {capacity} below node count {}", labels.len()),
            ));
        }
        if labels_out.is_null() {
            return Err(null("labels_out"));
        }
        std::slice::from_raw_parts_mut(labels_out, labels.len()).copy_from_slice(labels);
        Ok(())
    })
}

/// Releases a run. Null is ignored.
///
/// # Safety
/// `run` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sbmcd_run_free(run: *mut SbmcdRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}
