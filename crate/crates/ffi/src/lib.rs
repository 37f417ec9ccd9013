//! C ABI for the isogrowth library.
//!
//! Graphs cross the boundary as an opaque [`IsoGraph`] handle holding a
//! materialized graph and its truncation record. Every function returns an
//! [`IsoStatus`]; on failure the message is available from
//! [`iso_last_error`] on the same thread. Vertex sets are passed as arrays
//! of vertex indices (`0..vertex_count`, in vertex-id order).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use isogrowth::graph::io::read_truncated_graph;
use isogrowth::growth::{growth_profile, phi, pinch_fit, stratified_sample};
use isogrowth::isoperimetry::{analyze_set, certificate_bounds_check, finite_applicability, z_certificate};
use isogrowth::{ball_sizes, boundary, make_oracle, materialize, Error, FiniteGraph, GeneratorSpec, Truncation, VertexSet};

/// Opaque graph handle.
pub struct IsoGraph {
    graph: FiniteGraph,
    truncation: Truncation,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Margin = 3,
    Parse = 4,
    Io = 5,
    OutOfRange = 6,
    UnverifiedPinch = 7,
    ResourceLimit = 8,
    Failed = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct IsoSetAnalysis {
    pub size: usize,
    pub boundary_size: usize,
    /// `|∂A|·ln(2+|A|)/|A|`; NaN for the empty set.
    pub eii_ratio: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct IsoPinch {
    pub a: f64,
    pub c: f64,
    pub r_max: u32,
    pub sample_size: usize,
    pub violations: usize,
    pub equalities: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct IsoCertificate {
    pub radius: u32,
    pub set_size: usize,
    pub boundary_size: usize,
    pub z: f64,
    pub z_direct: f64,
    pub max_z_u: f64,
    pub kappa1: f64,
    pub beta: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> IsoStatus {
    match e {
        Error::Margin(_) => IsoStatus::Margin,
        Error::Parse { .. } | Error::Csv(_) => IsoStatus::Parse,
        Error::Io(_) => IsoStatus::Io,
        Error::OutOfRange(_) => IsoStatus::OutOfRange,
        Error::UnverifiedPinch { .. } => IsoStatus::UnverifiedPinch,
        Error::ResourceLimit { .. } => IsoStatus::ResourceLimit,
        Error::InvalidParameter(_) | Error::UnknownVertex(_) => IsoStatus::InvalidArgument,
        _ => IsoStatus::Failed,
    }
}

/// Runs `f`, converting errors and panics into a status plus last-error text.
fn guard(f: impl FnOnce() -> Result<(), IsoStatusError>) -> IsoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            IsoStatus::Ok
        }
        Ok(Err(IsoStatusError(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            IsoStatus::Panic
        }
    }
}

struct IsoStatusError(IsoStatus, String);

impl From<Error> for IsoStatusError {
    fn from(e: Error) -> Self {
        IsoStatusError(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> IsoStatusError {
    IsoStatusError(IsoStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> IsoStatusError {
    IsoStatusError(IsoStatus::InvalidArgument, msg.into())
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, IsoStatusError> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{what} is not UTF-8")))
}

unsafe fn graph_arg<'a>(g: *const IsoGraph) -> Result<&'a IsoGraph, IsoStatusError> {
    g.as_ref().ok_or_else(|| null("graph"))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, IsoStatusError> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn set_arg(g: &IsoGraph, set: *const u32, len: usize) -> Result<VertexSet, IsoStatusError> {
    if len == 0 {
        return Ok(VertexSet::new());
    }
    if set.is_null() {
        return Err(null("vertex set"));
    }
    let idx = std::slice::from_raw_parts(set, len);
    if let Some(&bad) = idx.iter().find(|&&v| v as usize >= g.graph.len()) {
        return Err(invalid(format!("vertex index {bad} out of range")));
    }
    Ok(VertexSet::from_indices(idx.iter().copied()))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn iso_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Materializes the ball of radius `radius` around the family's default root.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iso_graph_materialize(spec: *const c_char, radius: u32, out: *mut *mut IsoGraph) -> IsoStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let spec: GeneratorSpec = str_arg(spec, "spec")?.parse()?;
        let oracle = make_oracle(&spec)?;
        let root = oracle.default_root().ok_or_else(|| invalid("family has no vertices"))?;
        let (graph, truncation) = materialize(&*oracle, &root, radius)?;
        *out = Box::into_raw(Box::new(IsoGraph { graph, truncation }));
        Ok(())
    })
}

/// Reads an edge-list file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iso_graph_read(path: *const c_char, out: *mut *mut IsoGraph) -> IsoStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let (graph, truncation) = read_truncated_graph(str_arg(path, "path")?)?;
        *out = Box::into_raw(Box::new(IsoGraph { graph, truncation }));
        Ok(())
    })
}

/// Frees a handle; null is a no-op.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn iso_graph_free(g: *mut IsoGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iso_graph_vertex_count(g: *const IsoGraph, out: *mut usize) -> IsoStatus {
    guard(|| {
        *out_arg(out, "out")? = graph_arg(g)?.graph.len();
        Ok(())
    })
}

/// Index of the truncation root.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iso_graph_root(g: *const IsoGraph, out: *mut u32) -> IsoStatus {
    guard(|| {
        *out_arg(out, "out")? = graph_arg(g)?.truncation.root();
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle, `id` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn iso_graph_index_of(g: *const IsoGraph, id: *const c_char, out: *mut u32) -> IsoStatus {
    guard(|| {
        let g = graph_arg(g)?;
        let id = str_arg(id, "id")?.parse()?;
        *out_arg(out, "out")? = g.graph.require_index(&id)?;
        Ok(())
    })
}

/// Canonical id string of vertex `v`; release it with [`iso_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iso_graph_vertex_id(g: *const IsoGraph, v: u32, out: *mut *mut c_char) -> IsoStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let g = graph_arg(g)?;
        if v as usize >= g.graph.len() {
            return Err(invalid(format!("vertex index {v} out of range")));
        }
        *out = CString::new(g.graph.id(v).to_string()).map_err(|_| invalid("id contains NUL"))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from [`iso_graph_vertex_id`] or be null.
#[no_mangle]
pub unsafe extern "C" fn iso_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes `|B(v, r)|` for `r = 0..=r_max` into `out[0..=r_max]`.
///
/// # Safety
/// `g` must be a live handle; `out` must hold `out_len` elements.
#[no_mangle]
pub unsafe extern "C" fn iso_ball_sizes(
    g: *const IsoGraph,
    v: u32,
    r_max: u32,
    out: *mut usize,
    out_len: usize,
) -> IsoStatus {
    guard(|| {
        let g = graph_arg(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        if out_len < r_max as usize + 1 {
            return Err(invalid(format!("output buffer holds {out_len} values, need {}", r_max as usize + 1)));
        }
        let sizes = ball_sizes(&g.graph, &g.truncation, v, r_max)?;
        std::slice::from_raw_parts_mut(out, sizes.len()).copy_from_slice(&sizes);
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle; `set` must hold `len` indices; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn iso_boundary_size(g: *const IsoGraph, set: *const u32, len: usize, out: *mut usize) -> IsoStatus {
    guard(|| {
        let g = graph_arg(g)?;
        let a = set_arg(g, set, len)?;
        *out_arg(out, "out")? = boundary(&g.graph, &g.truncation, &a)?.len();
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle; `set` must hold `len` indices; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn iso_analyze_set(
    g: *const IsoGraph,
    set: *const u32,
    len: usize,
    out: *mut IsoSetAnalysis,
) -> IsoStatus {
    guard(|| {
        let g = graph_arg(g)?;
        let a = set_arg(g, set, len)?;
        let s = analyze_set(&g.graph, &g.truncation, &a)?;
        *out_arg(out, "out")? =
            IsoSetAnalysis { size: s.size, boundary_size: s.boundary_size, eii_ratio: s.eii_ratio.unwrap_or(f64::NAN) };
        Ok(())
    })
}

/// Fits `(a, c)` on the stratified sample of exact balls up to `r_max`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iso_pinch_fit(g: *const IsoGraph, r_max: u32, out: *mut IsoPinch) -> IsoStatus {
    guard(|| {
        let g = graph_arg(g)?;
        let profile = growth_profile(&g.graph, &g.truncation, &stratified_sample(&g.truncation, r_max), r_max);
        let est = pinch_fit(&profile)?;
        *out_arg(out, "out")? = IsoPinch {
            a: est.a,
            c: est.c,
            r_max,
            sample_size: profile.rows.len(),
            violations: est.violations.len(),
            equalities: est.equalities,
        };
        Ok(())
    })
}

/// `phi(n)` anchored at the truncation root.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iso_phi(g: *const IsoGraph, n: usize, out: *mut u32) -> IsoStatus {
    guard(|| {
        let g = graph_arg(g)?;
        *out_arg(out, "out")? = phi(&g.graph, &g.truncation, g.truncation.root(), n)?;
        Ok(())
    })
}

/// `⌊a^R / (2c)⌋`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iso_finite_applicability(a: f64, c: f64, radius: u32, out: *mut u64) -> IsoStatus {
    guard(|| {
        *out_arg(out, "out")? = finite_applicability(a, c, radius)?;
        Ok(())
    })
}

/// Z-certificate summary for the set under constants `(a, c)`.
///
/// # Safety
/// `g` must be a live handle; `set` must hold `len` indices; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn iso_certificate(
    g: *const IsoGraph,
    set: *const u32,
    len: usize,
    a: f64,
    c: f64,
    out: *mut IsoCertificate,
) -> IsoStatus {
    guard(|| {
        let g = graph_arg(g)?;
        let s = set_arg(g, set, len)?;
        let cert = z_certificate(&g.graph, &g.truncation, &s, a, c)?;
        let check = certificate_bounds_check(&cert, &cert.constants);
        *out_arg(out, "out")? = IsoCertificate {
            radius: cert.radius,
            set_size: cert.set_size,
            boundary_size: cert.boundary_size,
            z: cert.z,
            z_direct: cert.z_direct,
            max_z_u: check.max_z_u,
            kappa1: cert.kappa1,
            beta: cert.beta,
            lower_ok: check.lower_ok,
            upper_ok: check.upper_ok,
        };
        Ok(())
    })
}
