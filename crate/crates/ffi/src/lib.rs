//! C ABI for the drgdesc library.
//!
//! Graphs are held behind opaque handles; every analysis entry point
//! returns a status code and hands results back as JSON strings in the same
//! schemas the CLI emits (`drgdesc/1`). Strings returned through `out`
//! parameters are owned by the caller and must be released with
//! [`drg_string_free`]; handles with [`drg_graph_free`]. On any non-Ok
//! status, [`drg_last_error_message`] returns a human-readable description
//! of the most recent failure on the calling thread.

use drgdesc::analysis::{analyze, Analyzed};
use drgdesc::graphs::{
    bilinear_forms, doob, grassmann, halved_cube, hamming, johnson, DistanceRegularGraph,
    GraphError,
};
use drgdesc::jsonio::{
    analyze_to_json, descendents_to_json, drg_from_json, expanded_to_json, graph_to_json,
    parameter_array_from_json, parameter_array_to_json, qmatroid_to_json, GraphJson,
    ParameterArrayJson,
};
use drgdesc::leonard::{expand, rho_descendent};
use drgdesc::qmatroid::full_report;
use drgdesc::report::{default_mode, enumerate, verify_all, EnumMode, VerifyOptions};
use drgdesc::subsets::SubsetError;
use libc::c_char;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::sync::OnceLock;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DrgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BudgetExceeded = 3,
    NotDistanceRegular = 4,
    NotQPolynomial = 5,
    CheckFailed = 6,
    Utf8Error = 7,
}

/// Opaque graph handle: a verified distance-regular graph plus its cached
/// scheme analysis (built on first use).
pub struct DrgGraph {
    drg: DistanceRegularGraph,
    analyzed: OnceLock<Result<Analyzed, String>>,
}

impl DrgGraph {
    fn analyzed(&self) -> Result<&Analyzed, String> {
        self.analyzed
            .get_or_init(|| analyze(self.drg.clone()).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| e.clone())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn fail(status: DrgStatus, msg: impl Into<String>) -> DrgStatus {
    set_error(msg);
    status
}

fn graph_status(e: &GraphError) -> DrgStatus {
    match e {
        GraphError::BudgetExceeded { .. } => DrgStatus::BudgetExceeded,
        GraphError::NotDistanceRegular { .. } | GraphError::NotConnected => {
            DrgStatus::NotDistanceRegular
        }
        _ => DrgStatus::InvalidArgument,
    }
}

// Truncates at an interior NUL; JSON output never contains one.
fn to_c_string(s: String) -> *mut c_char {
    let c = match CString::new(s) {
        Ok(c) => c,
        Err(e) => {
            let n = e.nul_position();
            let mut v = e.into_vec();
            v.truncate(n);
            CString::new(v).expect("truncated at first NUL")
        }
    };
    c.into_raw()
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, DrgStatus> {
    if ptr.is_null() {
        return Err(DrgStatus::NullPointer);
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| DrgStatus::Utf8Error)
}

unsafe fn write_out<T>(out: *mut *mut T, value: *mut T) -> DrgStatus {
    if out.is_null() {
        return fail(DrgStatus::NullPointer, "out pointer is null");
    }
    unsafe { *out = value };
    DrgStatus::Ok
}

/// Most recent error message on this thread; caller frees with
/// [`drg_string_free`]. Never null.
#[no_mangle]
pub extern "C" fn drg_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| to_c_string(e.borrow().clone()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a drgdesc function and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn drg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Builds a family graph. `family` is one of `hamming`, `johnson`, `doob`,
/// `halved_cube`, `grassmann`, `bilinear_forms`; `params` points to
/// `nparams` integers in constructor order.
///
/// # Safety
/// `family` must be a NUL-terminated string, `params` must point to
/// `nparams` readable values, and `out` must be a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn drg_graph_new_family(
    family: *const c_char,
    params: *const i64,
    nparams: usize,
    out: *mut *mut DrgGraph,
) -> DrgStatus {
    let family = match unsafe { read_str(family) } {
        Ok(s) => s,
        Err(st) => return fail(st, "bad family string"),
    };
    if params.is_null() && nparams > 0 {
        return fail(DrgStatus::NullPointer, "params pointer is null");
    }
    let p: &[i64] = if nparams == 0 {
        &[]
    } else {
        unsafe { std::slice::from_raw_parts(params, nparams) }
    };
    let want = |k: usize| -> Result<(), DrgStatus> {
        if p.len() == k {
            Ok(())
        } else {
            Err(fail(
                DrgStatus::InvalidArgument,
                format!("{family} takes {k} parameters, got {}", p.len()),
            ))
        }
    };
    let cast = |x: i64| -> usize { x.max(0) as usize };
    let built = (|| -> Result<Result<DistanceRegularGraph, GraphError>, DrgStatus> {
        Ok(match family {
            "hamming" => {
                want(2)?;
                hamming(cast(p[0]), cast(p[1]))
            }
            "johnson" => {
                want(2)?;
                johnson(cast(p[0]), cast(p[1]))
            }
            "doob" => {
                want(2)?;
                doob(cast(p[0]), cast(p[1]))
            }
            "halved_cube" => {
                want(1)?;
                halved_cube(cast(p[0]))
            }
            "grassmann" => {
                want(3)?;
                grassmann(p[0].clamp(0, 255) as u8, cast(p[1]), cast(p[2]))
            }
            "bilinear_forms" | "bilinear" => {
                want(3)?;
                bilinear_forms(p[0].clamp(0, 255) as u8, cast(p[1]), cast(p[2]))
            }
            other => {
                return Err(fail(
                    DrgStatus::InvalidArgument,
                    format!("unknown family {other}"),
                ))
            }
        })
    })();
    let drg = match built {
        Err(st) => return st,
        Ok(Err(e)) => return fail(graph_status(&e), e.to_string()),
        Ok(Ok(g)) => g,
    };
    let handle = Box::new(DrgGraph { drg, analyzed: OnceLock::new() });
    unsafe { write_out(out, Box::into_raw(handle)) }
}

/// Parses a graph from the JSON exchange format and fully re-verifies
/// distance-regularity.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn drg_graph_from_json(
    json: *const c_char,
    out: *mut *mut DrgGraph,
) -> DrgStatus {
    let text = match unsafe { read_str(json) } {
        Ok(s) => s,
        Err(st) => return fail(st, "bad json string"),
    };
    let gj: GraphJson = match serde_json::from_str(text) {
        Ok(g) => g,
        Err(e) => return fail(DrgStatus::InvalidArgument, format!("bad graph json: {e}")),
    };
    let drg = match drg_from_json(&gj) {
        Ok(g) => g,
        Err(e) => return fail(graph_status(&e), e.to_string()),
    };
    let handle = Box::new(DrgGraph { drg, analyzed: OnceLock::new() });
    unsafe { write_out(out, Box::into_raw(handle)) }
}

/// Releases a graph handle.
///
/// # Safety
/// `g` must have come from a drgdesc constructor and not yet be freed.
#[no_mangle]
pub unsafe extern "C" fn drg_graph_free(g: *mut DrgGraph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Number of vertices; 0 for a null handle.
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn drg_graph_vertex_count(g: *const DrgGraph) -> usize {
    if g.is_null() {
        return 0;
    }
    unsafe { &*g }.drg.n()
}

/// Diameter; 0 for a null handle.
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn drg_graph_diameter(g: *const DrgGraph) -> usize {
    if g.is_null() {
        return 0;
    }
    unsafe { &*g }.drg.d
}

unsafe fn with_graph<'a>(g: *const DrgGraph) -> Result<&'a DrgGraph, DrgStatus> {
    if g.is_null() {
        return Err(fail(DrgStatus::NullPointer, "graph handle is null"));
    }
    Ok(unsafe { &*g })
}

fn with_analyzed(h: &DrgGraph) -> Result<&Analyzed, DrgStatus> {
    h.analyzed().map_err(|e| fail(DrgStatus::NotQPolynomial, e))
}

/// Graph in the JSON exchange format.
///
/// # Safety
/// `g` must be a live handle; `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn drg_graph_to_json(
    g: *const DrgGraph,
    out: *mut *mut c_char,
) -> DrgStatus {
    let h = match unsafe { with_graph(g) } {
        Ok(h) => h,
        Err(st) => return st,
    };
    let s = serde_json::to_string_pretty(&graph_to_json(&h.drg.graph)).expect("serialize");
    unsafe { write_out(out, to_c_string(s)) }
}

/// Scheme analysis (eigenvalues, multiplicities, Krein parameters,
/// Q-polynomial orderings, classical parameters, fitted array) as JSON.
///
/// # Safety
/// `g` must be a live handle; `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn drg_analyze_json(g: *const DrgGraph, out: *mut *mut c_char) -> DrgStatus {
    let h = match unsafe { with_graph(g) } {
        Ok(h) => h,
        Err(st) => return st,
    };
    let a = match with_analyzed(h) {
        Ok(a) => a,
        Err(st) => return st,
    };
    let s = serde_json::to_string_pretty(&analyze_to_json(a)).expect("serialize");
    unsafe { write_out(out, to_c_string(s)) }
}

fn parse_mode(a: &Analyzed, mode: Option<&str>) -> Result<EnumMode, DrgStatus> {
    match mode {
        None | Some("") | Some("auto") => Ok(default_mode(a)),
        Some(m) => EnumMode::parse(m).ok_or_else(|| {
            fail(
                DrgStatus::InvalidArgument,
                format!("unknown mode {m} (exhaustive|known|search|auto)"),
            )
        }),
    }
}

fn subset_status(e: &SubsetError) -> DrgStatus {
    match e {
        SubsetError::CapExceeded { .. } => DrgStatus::BudgetExceeded,
        SubsetError::Internal(_) => DrgStatus::CheckFailed,
        _ => DrgStatus::InvalidArgument,
    }
}

/// Enumerates descendents; `mode` may be null or `auto` for the default
/// (exhaustive under the subset cap, classified forms for family graphs).
///
/// # Safety
/// `g` must be a live handle, `mode` null or NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn drg_descendents_json(
    g: *const DrgGraph,
    mode: *const c_char,
    budget: u64,
    threads: u32,
    out: *mut *mut c_char,
) -> DrgStatus {
    let h = match unsafe { with_graph(g) } {
        Ok(h) => h,
        Err(st) => return st,
    };
    let a = match with_analyzed(h) {
        Ok(a) => a,
        Err(st) => return st,
    };
    let mode_str = if mode.is_null() {
        None
    } else {
        match unsafe { read_str(mode) } {
            Ok(s) => Some(s),
            Err(st) => return fail(st, "bad mode string"),
        }
    };
    let mode = match parse_mode(a, mode_str) {
        Ok(m) => m,
        Err(st) => return st,
    };
    let (records, complete, exhausted) =
        match enumerate(a, mode, budget, threads.max(1) as usize) {
            Ok(r) => r,
            Err(e) => return fail(subset_status(&e), e.to_string()),
        };
    let j = descendents_to_json(a, mode.label(), complete, exhausted, &records);
    let s = serde_json::to_string_pretty(&j).expect("serialize");
    unsafe { write_out(out, to_c_string(s)) }
}

/// Quantum-matroid report over the descendent family.
///
/// # Safety
/// Same contract as [`drg_descendents_json`].
#[no_mangle]
pub unsafe extern "C" fn drg_qmatroid_json(
    g: *const DrgGraph,
    mode: *const c_char,
    budget: u64,
    threads: u32,
    out: *mut *mut c_char,
) -> DrgStatus {
    let h = match unsafe { with_graph(g) } {
        Ok(h) => h,
        Err(st) => return st,
    };
    let a = match with_analyzed(h) {
        Ok(a) => a,
        Err(st) => return st,
    };
    let mode_str = if mode.is_null() {
        None
    } else {
        match unsafe { read_str(mode) } {
            Ok(s) => Some(s),
            Err(st) => return fail(st, "bad mode string"),
        }
    };
    let mode = match parse_mode(a, mode_str) {
        Ok(m) => m,
        Err(st) => return st,
    };
    let (records, complete, _) = match enumerate(a, mode, budget, threads.max(1) as usize) {
        Ok(r) => r,
        Err(e) => return fail(subset_status(&e), e.to_string()),
    };
    let report = match full_report(a, &records) {
        Ok(r) => r,
        Err(e) => return fail(DrgStatus::CheckFailed, e.to_string()),
    };
    let j = qmatroid_to_json(a, mode.label(), complete, records.len(), &report);
    let s = serde_json::to_string_pretty(&j).expect("serialize");
    unsafe { write_out(out, to_c_string(s)) }
}

/// Full verification report. Returns `Ok` with the report JSON even when
/// checks fail; `passed` inside the report carries the verdict.
///
/// # Safety
/// Same contract as [`drg_descendents_json`].
#[no_mangle]
pub unsafe extern "C" fn drg_verify_all_json(
    g: *const DrgGraph,
    mode: *const c_char,
    budget: u64,
    threads: u32,
    samples: u32,
    out: *mut *mut c_char,
) -> DrgStatus {
    let h = match unsafe { with_graph(g) } {
        Ok(h) => h,
        Err(st) => return st,
    };
    let a = match with_analyzed(h) {
        Ok(a) => a,
        Err(st) => return st,
    };
    let mode_str = if mode.is_null() {
        None
    } else {
        match unsafe { read_str(mode) } {
            Ok(s) => Some(s),
            Err(st) => return fail(st, "bad mode string"),
        }
    };
    let mode = match parse_mode(a, mode_str) {
        Ok(m) => m,
        Err(st) => return st,
    };
    let opts = VerifyOptions {
        mode: Some(mode),
        budget,
        threads: threads.max(1) as usize,
        samples: samples as usize,
    };
    let (report, _) = verify_all(a, &opts);
    let s = serde_json::to_string_pretty(&report).expect("serialize");
    unsafe { write_out(out, to_c_string(s)) }
}

/// Fitted Leonard parameter array of the graph (case, scalars, expansion).
///
/// # Safety
/// `g` must be a live handle; `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn drg_leonard_fit_json(
    g: *const DrgGraph,
    out: *mut *mut c_char,
) -> DrgStatus {
    let h = match unsafe { with_graph(g) } {
        Ok(h) => h,
        Err(st) => return st,
    };
    let a = match with_analyzed(h) {
        Ok(a) => a,
        Err(st) => return st,
    };
    #[derive(serde::Serialize)]
    struct FitJson {
        schema: String,
        graph: String,
        array: ParameterArrayJson,
        expanded: drgdesc::jsonio::ExpandedArrayJson,
    }
    let j = FitJson {
        schema: drgdesc::jsonio::SCHEMA.to_string(),
        graph: a.g.id(),
        array: parameter_array_to_json(&a.parray),
        expanded: expanded_to_json(&a.expanded),
    };
    let s = serde_json::to_string_pretty(&j).expect("serialize");
    unsafe { write_out(out, to_c_string(s)) }
}

fn parse_array(text: &str) -> Result<drgdesc::leonard::ParameterArray, DrgStatus> {
    let j: ParameterArrayJson = serde_json::from_str(text)
        .map_err(|e| fail(DrgStatus::InvalidArgument, format!("bad array json: {e}")))?;
    parameter_array_from_json(&j).map_err(|e| fail(DrgStatus::InvalidArgument, e.to_string()))
}

/// Expands a parameter array (JSON in, JSON out).
///
/// # Safety
/// `array_json` must be NUL-terminated; `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn drg_leonard_expand_json(
    array_json: *const c_char,
    out: *mut *mut c_char,
) -> DrgStatus {
    let text = match unsafe { read_str(array_json) } {
        Ok(s) => s,
        Err(st) => return fail(st, "bad array string"),
    };
    let pa = match parse_array(text) {
        Ok(p) => p,
        Err(st) => return st,
    };
    let ea = match expand(&pa) {
        Ok(e) => e,
        Err(e) => return fail(DrgStatus::InvalidArgument, e.to_string()),
    };
    let s = serde_json::to_string_pretty(&expanded_to_json(&ea)).expect("serialize");
    unsafe { write_out(out, to_c_string(s)) }
}

/// Transforms an array into the array of its rho-descendent.
///
/// # Safety
/// `array_json` must be NUL-terminated; `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn drg_leonard_descend_json(
    array_json: *const c_char,
    d_prime: u32,
    rho: u32,
    out: *mut *mut c_char,
) -> DrgStatus {
    let text = match unsafe { read_str(array_json) } {
        Ok(s) => s,
        Err(st) => return fail(st, "bad array string"),
    };
    let pa = match parse_array(text) {
        Ok(p) => p,
        Err(st) => return st,
    };
    let sub = match rho_descendent(&pa, d_prime as usize, rho as usize) {
        Ok(s) => s,
        Err(e) => return fail(DrgStatus::InvalidArgument, e.to_string()),
    };
    let s = serde_json::to_string_pretty(&parameter_array_to_json(&sub)).expect("serialize");
    unsafe { write_out(out, to_c_string(s)) }
}
