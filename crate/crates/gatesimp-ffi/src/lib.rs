//! C ABI for the gatesimp library: opaque handles, status codes, and a
//! thread-local last-error message. Every function is panic-safe and
//! null-safe; ownership of returned handles passes to the caller, who must
//! release them with the matching `_free`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::fs::File;
use std::io::BufReader;
use std::panic::{catch_unwind, AssertUnwindSafe};

use libc::{c_char, size_t};

use gatesimp::error::Error;
use gatesimp::gategraph::{build_local_gate_graph, sparsify, QueryContext, QueryResult, WeightedGraph};
use gatesimp::gates::{
    discover_fs_with, discover_kskip_with, discover_sc_with, DiscoverOptions, GateMode,
    GateVertexSet, Method,
};
use gatesimp::graph::{graph_stats, load_edge_list, Graph, LabelTable, APSP_GUARD};
use gatesimp::verify;

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GatesimpStatus {
    Ok = 0,
    /// A panic was caught at the ABI boundary.
    Internal = 1,
    InvalidArgument = 2,
    /// A discovery self-check or verification reported violations.
    Verification = 3,
    /// A size or budget guard refused the operation.
    Resource = 4,
    Parse = 5,
    Io = 6,
    NullPointer = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let cleaned: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(cleaned).unwrap_or_default());
}

fn status_of(err: &Error) -> GatesimpStatus {
    match err {
        Error::Parse { .. } => GatesimpStatus::Parse,
        Error::InvalidArgument(_) | Error::Infeasible { .. } => GatesimpStatus::InvalidArgument,
        Error::ResourceGuard(_) => GatesimpStatus::Resource,
        Error::SelfCheckFailed { .. } => GatesimpStatus::Verification,
        Error::Io(_) => GatesimpStatus::Io,
    }
}

fn fail(err: Error) -> GatesimpStatus {
    let status = status_of(&err);
    set_error(&err.to_string());
    status
}

/// Runs `f` with panics converted to [`GatesimpStatus::Internal`].
fn guarded<F: FnOnce() -> GatesimpStatus>(f: F) -> GatesimpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            GatesimpStatus::Internal
        }
    }
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gatesimp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// An immutable unweighted undirected graph plus its label table.
pub struct GatesimpGraph {
    graph: Graph,
    labels: LabelTable,
}

/// A discovered gate-vertex set or k-skip cover.
pub struct GatesimpGateSet {
    inner: GateVertexSet,
}

/// A weighted gate graph tied to the epsilon it was built at.
pub struct GatesimpGateGraph {
    weighted: WeightedGraph,
    epsilon: u32,
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> GatesimpStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return GatesimpStatus::NullPointer;
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    GatesimpStatus::Ok
}

unsafe fn c_str<'a>(ptr: *const c_char) -> Result<&'a str, GatesimpStatus> {
    if ptr.is_null() {
        set_error("string argument is null");
        return Err(GatesimpStatus::NullPointer);
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        GatesimpStatus::InvalidArgument
    })
}

macro_rules! deref {
    ($ptr:expr) => {
        match unsafe { $ptr.as_ref() } {
            Some(r) => r,
            None => {
                set_error("handle argument is null");
                return GatesimpStatus::NullPointer;
            }
        }
    };
}

/// Loads an edge-list file (two whitespace-separated labels per line, `#`
/// comments). Labels are densified to ids 0..n in first-appearance order.
///
/// # Safety
/// `path` must be a valid NUL-terminated string; `out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_graph_load_file(
    path: *const c_char,
    out: *mut *mut GatesimpGraph,
) -> GatesimpStatus {
    guarded(|| {
        let path = match unsafe { c_str(path) } {
            Ok(s) => s,
            Err(st) => return st,
        };
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) => return fail(e.into()),
        };
        match load_edge_list(BufReader::new(file)) {
            Ok(loaded) => unsafe {
                write_out(
                    out,
                    GatesimpGraph {
                        graph: loaded.graph,
                        labels: loaded.labels,
                    },
                )
            },
            Err(e) => fail(e),
        }
    })
}

/// Parses edge-list text from a NUL-terminated UTF-8 buffer.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_graph_from_edge_list(
    text: *const c_char,
    out: *mut *mut GatesimpGraph,
) -> GatesimpStatus {
    guarded(|| {
        let text = match unsafe { c_str(text) } {
            Ok(s) => s,
            Err(st) => return st,
        };
        match load_edge_list(text.as_bytes()) {
            Ok(loaded) => unsafe {
                write_out(
                    out,
                    GatesimpGraph {
                        graph: loaded.graph,
                        labels: loaded.labels,
                    },
                )
            },
            Err(e) => fail(e),
        }
    })
}

/// Seeded Erdős–Rényi graph with round(density * n) edges.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_graph_gen_er(
    n: size_t,
    density: f64,
    seed: u64,
    out: *mut *mut GatesimpGraph,
) -> GatesimpStatus {
    guarded(|| match gatesimp::gen::gen_er(n, density, seed) {
        Ok(graph) => {
            let labels = LabelTable::identity(graph.n());
            unsafe { write_out(out, GatesimpGraph { graph, labels }) }
        }
        Err(e) => fail(e),
    })
}

/// Seeded preferential-attachment scale-free graph.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_graph_gen_scale_free(
    n: size_t,
    density: f64,
    seed: u64,
    out: *mut *mut GatesimpGraph,
) -> GatesimpStatus {
    guarded(|| match gatesimp::gen::gen_scale_free(n, density, seed) {
        Ok(graph) => {
            let labels = LabelTable::identity(graph.n());
            unsafe { write_out(out, GatesimpGraph { graph, labels }) }
        }
        Err(e) => fail(e),
    })
}

/// # Safety
/// `g` must be a handle from this library, not yet freed; passing null is
/// a no-op.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_graph_free(g: *mut GatesimpGraph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_graph_vertex_count(g: *const GatesimpGraph) -> size_t {
    unsafe { g.as_ref() }.map_or(0, |g| g.graph.n())
}

/// Undirected edge count (each edge counted once).
///
/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_graph_edge_count(g: *const GatesimpGraph) -> size_t {
    unsafe { g.as_ref() }.map_or(0, |g| g.graph.m())
}

/// Resolves a vertex label to its dense id; returns false when unknown.
///
/// # Safety
/// `g` and `label` must be valid; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_graph_vertex_id(
    g: *const GatesimpGraph,
    label: *const c_char,
    out: *mut size_t,
) -> bool {
    let Some(g) = (unsafe { g.as_ref() }) else {
        return false;
    };
    let Ok(label) = (unsafe { c_str(label) }) else {
        return false;
    };
    match g.labels.id(label) {
        Some(id) => {
            if !out.is_null() {
                unsafe { *out = id };
            }
            true
        }
        None => false,
    }
}

/// Basic distance statistics of a graph.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct GatesimpGraphStats {
    pub n: size_t,
    pub m: size_t,
    pub diameter: u32,
    pub avg_dist: f64,
    pub components: size_t,
    /// False when the figures come from sampled BFS sources.
    pub exact: bool,
}

/// Diameter, mean pairwise distance, and component count. Exact when the
/// graph fits the all-pairs guard, sampled otherwise.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_graph_stats(
    g: *const GatesimpGraph,
    out: *mut GatesimpGraphStats,
) -> GatesimpStatus {
    guarded(|| {
        let g = deref!(g);
        if out.is_null() {
            set_error("output pointer is null");
            return GatesimpStatus::NullPointer;
        }
        match graph_stats(&g.graph, g.graph.n() <= APSP_GUARD) {
            Ok(s) => {
                unsafe {
                    *out = GatesimpGraphStats {
                        n: s.n,
                        m: s.m,
                        diameter: s.diameter,
                        avg_dist: s.avg_dist,
                        components: s.components,
                        exact: s.exact,
                    }
                };
                GatesimpStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Discovery method selector.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GatesimpMethod {
    Sc = 0,
    Fs = 1,
    Exact = 2,
}

/// Discovers a gate-vertex set at `epsilon` with SC (set-cover greedy) or
/// FS (degree-ordered adaptive sampling). `self_check` re-validates the
/// cover before returning.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_discover_gates(
    g: *const GatesimpGraph,
    epsilon: u32,
    method: GatesimpMethod,
    self_check: bool,
    out: *mut *mut GatesimpGateSet,
) -> GatesimpStatus {
    guarded(|| {
        let g = deref!(g);
        let opts = DiscoverOptions {
            self_check,
            ..DiscoverOptions::default()
        };
        let result = match method {
            GatesimpMethod::Sc => discover_sc_with(&g.graph, epsilon, &opts),
            GatesimpMethod::Fs => discover_fs_with(&g.graph, epsilon, &opts),
            GatesimpMethod::Exact => {
                set_error("gate discovery supports SC and FS");
                return GatesimpStatus::InvalidArgument;
            }
        };
        match result {
            Ok(inner) => unsafe { write_out(out, GatesimpGateSet { inner }) },
            Err(e) => fail(e),
        }
    })
}

/// Discovers a k-skip cover with SC or the exact branch-and-bound solver.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_discover_kskip(
    g: *const GatesimpGraph,
    k: u32,
    method: GatesimpMethod,
    self_check: bool,
    out: *mut *mut GatesimpGateSet,
) -> GatesimpStatus {
    guarded(|| {
        let g = deref!(g);
        let m = match method {
            GatesimpMethod::Sc => Method::Sc,
            GatesimpMethod::Exact => Method::Exact,
            GatesimpMethod::Fs => {
                set_error("k-skip discovery supports SC and EXACT");
                return GatesimpStatus::InvalidArgument;
            }
        };
        let opts = DiscoverOptions {
            self_check,
            ..DiscoverOptions::default()
        };
        match discover_kskip_with(&g.graph, k, m, &opts) {
            Ok(inner) => unsafe { write_out(out, GatesimpGateSet { inner }) },
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` must be a handle from this library, not yet freed; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_gateset_free(s: *mut GatesimpGateSet) {
    if !s.is_null() {
        drop(unsafe { Box::from_raw(s) });
    }
}

/// # Safety
/// `s` must be a live gate-set handle.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_gateset_size(s: *const GatesimpGateSet) -> size_t {
    unsafe { s.as_ref() }.map_or(0, |s| s.inner.size())
}

/// Copies up to `cap` gate vertex ids (ascending) into `buf`; stores the
/// full set size in `written` so callers can size a second call.
///
/// # Safety
/// `s` must be a live handle; `buf` must point to at least `cap` elements
/// unless `cap` is 0.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_gateset_vertices(
    s: *const GatesimpGateSet,
    buf: *mut size_t,
    cap: size_t,
    written: *mut size_t,
) -> GatesimpStatus {
    guarded(|| {
        let s = deref!(s);
        if !written.is_null() {
            unsafe { *written = s.inner.size() };
        }
        if cap > 0 && buf.is_null() {
            set_error("buffer is null but capacity is nonzero");
            return GatesimpStatus::NullPointer;
        }
        let take = cap.min(s.inner.size());
        for (i, &v) in s.inner.vertices.iter().take(take).enumerate() {
            unsafe { *buf.add(i) = v };
        }
        GatesimpStatus::Ok
    })
}

/// Builds the local-gate graph of a gate-mode set, optionally applying the
/// distance-preserving edge sparsification.
///
/// # Safety
/// Both handles must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_gategraph_build(
    g: *const GatesimpGraph,
    gates: *const GatesimpGateSet,
    apply_sparsify: bool,
    out: *mut *mut GatesimpGateGraph,
) -> GatesimpStatus {
    guarded(|| {
        let g = deref!(g);
        let gates = deref!(gates);
        let epsilon = match gates.inner.mode {
            GateMode::Gate { epsilon } => epsilon,
            GateMode::KSkip { .. } => {
                set_error("gate graphs need a gate-mode set");
                return GatesimpStatus::InvalidArgument;
            }
        };
        match build_local_gate_graph(&g.graph, &gates.inner, epsilon) {
            Ok(stage1) => {
                let weighted = if apply_sparsify {
                    sparsify(&stage1)
                } else {
                    stage1
                };
                unsafe { write_out(out, GatesimpGateGraph { weighted, epsilon }) }
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `gg` must be a handle from this library, not yet freed; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_gategraph_free(gg: *mut GatesimpGateGraph) {
    if !gg.is_null() {
        drop(unsafe { Box::from_raw(gg) });
    }
}

/// # Safety
/// `gg` must be a live gate-graph handle.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_gategraph_edge_count(gg: *const GatesimpGateGraph) -> size_t {
    unsafe { gg.as_ref() }.map_or(0, |gg| gg.weighted.edge_count())
}

/// How a query was answered.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GatesimpRoute {
    Local = 0,
    ViaGates = 1,
    Unreachable = 2,
}

/// Result of a distance query. `distance` is meaningful unless the route
/// is unreachable; the witness fields are meaningful only for via-gates
/// routes.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct GatesimpQueryResult {
    pub route: GatesimpRoute,
    pub distance: u32,
    pub witness_x: size_t,
    pub witness_y: size_t,
}

fn convert_query(qr: QueryResult) -> GatesimpQueryResult {
    match qr {
        QueryResult::Local { distance } => GatesimpQueryResult {
            route: GatesimpRoute::Local,
            distance,
            witness_x: 0,
            witness_y: 0,
        },
        QueryResult::ViaGates {
            distance,
            witness: (x, y),
        } => GatesimpQueryResult {
            route: GatesimpRoute::ViaGates,
            distance,
            witness_x: x,
            witness_y: y,
        },
        QueryResult::Unreachable => GatesimpQueryResult {
            route: GatesimpRoute::Unreachable,
            distance: 0,
            witness_x: 0,
            witness_y: 0,
        },
    }
}

/// Answers one exact distance query: local pairs directly, non-local pairs
/// through the gate graph.
///
/// # Safety
/// All handles must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_query(
    g: *const GatesimpGraph,
    gates: *const GatesimpGateSet,
    gg: *const GatesimpGateGraph,
    u: size_t,
    v: size_t,
    out: *mut GatesimpQueryResult,
) -> GatesimpStatus {
    unsafe { gatesimp_query_batch(g, gates, gg, &u, &v, out, 1) }
}

/// Answers `count` queries with one shared gate-graph preprocessing pass;
/// `us`, `vs`, and `out` must each hold `count` elements.
///
/// # Safety
/// All handles must be live and the three arrays valid for `count`
/// elements.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_query_batch(
    g: *const GatesimpGraph,
    gates: *const GatesimpGateSet,
    gg: *const GatesimpGateGraph,
    us: *const size_t,
    vs: *const size_t,
    out: *mut GatesimpQueryResult,
    count: size_t,
) -> GatesimpStatus {
    guarded(|| {
        let g = deref!(g);
        let gates = deref!(gates);
        let gg = deref!(gg);
        if count > 0 && (us.is_null() || vs.is_null() || out.is_null()) {
            set_error("query arrays are null");
            return GatesimpStatus::NullPointer;
        }
        let ctx = match QueryContext::new(&g.graph, &gates.inner, &gg.weighted, gg.epsilon) {
            Ok(ctx) => ctx,
            Err(e) => return fail(e),
        };
        for i in 0..count {
            let (u, v) = unsafe { (*us.add(i), *vs.add(i)) };
            match ctx.query(u, v) {
                Ok(qr) => unsafe { *out.add(i) = convert_query(qr) },
                Err(e) => return fail(e),
            }
        }
        GatesimpStatus::Ok
    })
}

/// Re-validates a discovered set against its defining cover condition
/// (gate local condition, or k-skip condition). Sets `*pass` and returns
/// Ok even when validation fails; the status reports only operational
/// errors.
///
/// # Safety
/// Both handles must be live; `pass` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gatesimp_verify_cover(
    g: *const GatesimpGraph,
    gates: *const GatesimpGateSet,
    pass: *mut bool,
) -> GatesimpStatus {
    guarded(|| {
        let g = deref!(g);
        let gates = deref!(gates);
        if pass.is_null() {
            set_error("output pointer is null");
            return GatesimpStatus::NullPointer;
        }
        let report = match gates.inner.mode {
            GateMode::Gate { epsilon } => {
                verify::check_gate_cover_bfs(&g.graph, epsilon, &gates.inner.vertices)
            }
            GateMode::KSkip { k } => {
                verify::check_kskip_cover_bfs(&g.graph, k, &gates.inner.vertices)
            }
        };
        match report {
            Ok(r) => {
                unsafe { *pass = r.pass };
                GatesimpStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
