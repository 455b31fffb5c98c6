//! C interface to the gkm library.
//!
//! Graphs live behind an opaque handle. Every call returns a [`GkmStatus`];
//! on failure, [`gkm_last_error`] describes the error for the calling thread.
//! Strings returned through `out` parameters are owned by the caller and must
//! be released with [`gkm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gkm::canonical::{canonical_table, positivity_report, theta_table_with, ThetaMethod};
use gkm::exactalg::DirectionVector;
use gkm::gkmgraph::{load_graph, GkmGraph};
use gkm::morse::morse_data;
use gkm::oracle::{billey_restrict, solve_canonical_linear, Permutation};
use gkm::report;
use gkm::spaces::SpaceSpec;
use gkm::Error;

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GkmStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed text: JSON, polynomial, direction, permutation or space name.
    Parse = 3,
    /// The document parsed but the graph breaks a GKM invariant.
    InvalidGraph = 4,
    /// Well-formed input refused: non-generic direction or index-increasing failure.
    Refusal = 5,
    /// Any other library error.
    Failed = 6,
    /// A panic was caught at the boundary.
    Panic = 7,
}

/// Opaque graph handle.
pub struct GkmGraphHandle {
    graph: GkmGraph,
    /// The built-in direction when the handle came from a named space.
    default_xi: Option<DirectionVector>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GkmStatus {
    match e {
        _ if e.is_refusal() => GkmStatus::Refusal,
        Error::IndexNotIncreasing { .. } => GkmStatus::Refusal,
        Error::Parse(_) | Error::Schema(_) | Error::Json(_) | Error::UnknownVertex(_) | Error::DimensionMismatch { .. } => {
            GkmStatus::Parse
        }
        Error::InvalidGraph(_) | Error::DuplicateVertex(_) => GkmStatus::InvalidGraph,
        _ => GkmStatus::Failed,
    }
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), GkmStatus>) -> GkmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GkmStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside gkm".into());
            GkmStatus::Panic
        }
    }
}

fn lib<T>(r: gkm::Result<T>) -> Result<T, GkmStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, GkmStatus> {
    if p.is_null() {
        set_error(format!("{name} is null"));
        return Err(GkmStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{name} is not UTF-8"));
        GkmStatus::InvalidUtf8
    })
}

unsafe fn handle_arg<'a>(h: *const GkmGraphHandle) -> Result<&'a GkmGraphHandle, GkmStatus> {
    h.as_ref().ok_or_else(|| {
        set_error("graph handle is null".into());
        GkmStatus::NullArgument
    })
}

unsafe fn out_arg<'a, T>(p: *mut T) -> Result<&'a mut T, GkmStatus> {
    p.as_mut().ok_or_else(|| {
        set_error("output pointer is null".into());
        GkmStatus::NullArgument
    })
}

/// A null `xi` selects the handle's built-in direction.
unsafe fn direction(h: &GkmGraphHandle, xi: *const c_char) -> Result<DirectionVector, GkmStatus> {
    if xi.is_null() {
        return h.default_xi.clone().ok_or_else(|| {
            set_error("xi is null and the graph has no built-in direction".into());
            GkmStatus::NullArgument
        });
    }
    let xi = lib(DirectionVector::parse(str_arg(xi, "xi")?))?;
    if xi.dim() != h.graph.dim() {
        set_error(format!("xi has {} entries, graph dimension is {}", xi.dim(), h.graph.dim()));
        return Err(GkmStatus::Parse);
    }
    Ok(xi)
}

fn emit(out: &mut *mut c_char, text: String) -> Result<(), GkmStatus> {
    *out = CString::new(text).map_err(|_| GkmStatus::Failed)?.into_raw();
    Ok(())
}

fn emit_handle(out: &mut *mut GkmGraphHandle, graph: GkmGraph, default_xi: Option<DirectionVector>) {
    *out = Box::into_raw(Box::new(GkmGraphHandle { graph, default_xi }));
}

/// Loads a graph document; the graph must pass validation.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkm_graph_from_json(json: *const c_char, out: *mut *mut GkmGraphHandle) -> GkmStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let g = lib(load_graph(str_arg(json, "json")?))?;
        emit_handle(out, g, None);
        Ok(())
    })
}

/// Builds a named space such as `cpn:3` or `blowup_cp2`.
///
/// # Safety
/// `spec` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkm_graph_from_space(spec: *const c_char, out: *mut *mut GkmGraphHandle) -> GkmStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let spec: SpaceSpec = lib(str_arg(spec, "spec")?.parse())?;
        let (g, xi) = spec.build();
        emit_handle(out, g, Some(xi));
        Ok(())
    })
}

/// # Safety
/// `h` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gkm_graph_free(h: *mut GkmGraphHandle) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkm_graph_vertex_count(h: *const GkmGraphHandle, out: *mut usize) -> GkmStatus {
    guard(|| {
        *out_arg(out)? = handle_arg(h)?.graph.vertex_count();
        Ok(())
    })
}

/// Rank of the torus.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkm_graph_dim(h: *const GkmGraphHandle, out: *mut usize) -> GkmStatus {
    guard(|| {
        *out_arg(out)? = handle_arg(h)?.graph.dim();
        Ok(())
    })
}

/// Validation report as JSON.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkm_validate_json(h: *const GkmGraphHandle, out: *mut *mut c_char) -> GkmStatus {
    guard(|| {
        let out = out_arg(out)?;
        let h = handle_arg(h)?;
        emit(out, report::validation(&h.graph.validate()).render(true))
    })
}

/// All canonical classes with Θ, the one-step graph and positivity, as JSON.
/// `xi` is comma-separated rationals, or null for the built-in direction.
///
/// # Safety
/// `h` must be a live handle, `xi` null or a valid C string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gkm_canonical_table_json(
    h: *const GkmGraphHandle,
    xi: *const c_char,
    out: *mut *mut c_char,
) -> GkmStatus {
    guard(|| {
        let out = out_arg(out)?;
        let h = handle_arg(h)?;
        let xi = direction(h, xi)?;
        let b = lib(canonical_table(&h.graph, &xi))?;
        let r = report::canonical(&h.graph, &b, &positivity_report(&b.graph, &b.thetas));
        emit(out, r.render(true))
    })
}

/// Θ by both methods, as JSON with an `agree` flag.
///
/// # Safety
/// `h` must be a live handle, `xi` null or a valid C string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gkm_theta_json(h: *const GkmGraphHandle, xi: *const c_char, out: *mut *mut c_char) -> GkmStatus {
    guard(|| {
        let out = out_arg(out)?;
        let h = handle_arg(h)?;
        let xi = direction(h, xi)?;
        let md = lib(morse_data(&h.graph, &xi))?;
        let tables = [
            ("projection", lib(theta_table_with(&h.graph, &md, ThetaMethod::Projection))?),
            ("modular", lib(theta_table_with(&h.graph, &md, ThetaMethod::Modular))?),
        ];
        emit(out, report::thetas(&h.graph, &tables).render(true))
    })
}

/// Solves for the canonical class of `vertex` from its defining conditions.
/// An infeasible system is a successful call whose JSON status is `Infeasible`.
///
/// # Safety
/// `h` must be a live handle, `xi` null or a valid C string, `vertex` a
/// valid C string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gkm_solve_json(
    h: *const GkmGraphHandle,
    xi: *const c_char,
    vertex: *const c_char,
    out: *mut *mut c_char,
) -> GkmStatus {
    guard(|| {
        let out = out_arg(out)?;
        let h = handle_arg(h)?;
        let xi = direction(h, xi)?;
        let p = lib(h.graph.index_of(str_arg(vertex, "vertex")?))?;
        let (system, outcome) = lib(solve_canonical_linear(&h.graph, &xi, p))?;
        emit(out, report::solve(&h.graph, &system, &outcome).render(true))
    })
}

/// Subword-formula restriction of the Schubert class of `sigma` at `mu`,
/// as polynomial text. Permutations are one-line, e.g. `"231"` or `"2,3,1"`.
///
/// # Safety
/// `sigma` and `mu` must be valid C strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkm_billey(sigma: *const c_char, mu: *const c_char, out: *mut *mut c_char) -> GkmStatus {
    guard(|| {
        let out = out_arg(out)?;
        let s = lib(Permutation::parse(str_arg(sigma, "sigma")?))?;
        let m = lib(Permutation::parse(str_arg(mu, "mu")?))?;
        if s.n() != m.n() {
            set_error(format!("sigma has {} letters, mu has {}", s.n(), m.n()));
            return Err(GkmStatus::Parse);
        }
        emit(out, billey_restrict(&s, &m).to_string())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gkm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gkm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
