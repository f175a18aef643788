//! C ABI over the `subtour` library.
//!
//! Graphs live behind an opaque [`SubtourGraph`] handle. Every fallible call
//! returns a [`SubtourStatus`]; on failure the message is available from
//! [`subtour_last_error`] on the same thread. Strings handed out by the
//! library are NUL-terminated UTF-8 and must be released with
//! [`subtour_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use subtour::descriptions::{build, BuildOptions, DescriptionKind};
use subtour::locked::enumerate_locked;
use subtour::lp_format::emit_lp;
use subtour::tsp_bound::bound;
use subtour::{Error, Graph, QPoint};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubtourStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Infeasible = 5,
    ScaleLimit = 6,
    Internal = 7,
}

/// Opaque graph handle.
pub struct SubtourGraph {
    graph: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

fn status_of(err: &Error) -> SubtourStatus {
    match err {
        Error::Parse { .. } | Error::Document(_) => SubtourStatus::Parse,
        Error::Domain(_) | Error::DimensionMismatch { .. } | Error::Unbounded => SubtourStatus::Domain,
        Error::Infeasible => SubtourStatus::Infeasible,
        Error::ScaleLimit(_) => SubtourStatus::ScaleLimit,
        Error::Contradiction(_) => SubtourStatus::Internal,
    }
}

type Step<T> = std::result::Result<T, SubtourStatus>;

fn fail<T>(status: SubtourStatus, message: impl Into<String>) -> Step<T> {
    set_error(message);
    Err(status)
}

fn lift<T>(r: subtour::Result<T>) -> Step<T> {
    r.or_else(|e| fail(status_of(&e), e.to_string()))
}

/// Runs `body`, converting panics and errors into status codes.
fn guarded(body: impl FnOnce() -> Step<()>) -> SubtourStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            SubtourStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            SubtourStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Step<&'a str> {
    if p.is_null() {
        return fail(SubtourStatus::NullArgument, "null string argument");
    }
    CStr::from_ptr(p)
        .to_str()
        .or_else(|_| fail(SubtourStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn graph_ref<'a>(g: *const SubtourGraph) -> Step<&'a Graph> {
    match g.as_ref() {
        Some(h) => Ok(&h.graph),
        None => fail(SubtourStatus::NullArgument, "null graph handle"),
    }
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Step<()> {
    if out.is_null() {
        return fail(SubtourStatus::NullArgument, "null output pointer");
    }
    let c = CString::new(text).or_else(|_| fail(SubtourStatus::Internal, "output contains NUL"))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn subtour_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses an edge-list document into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn subtour_graph_parse(text: *const c_char, out: *mut *mut SubtourGraph) -> SubtourStatus {
    guarded(|| {
        if out.is_null() {
            return fail(SubtourStatus::NullArgument, "null output pointer");
        }
        let graph = lift(Graph::parse(read_str(text)?))?;
        *out = Box::into_raw(Box::new(SubtourGraph { graph }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `g` must come from [`subtour_graph_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn subtour_graph_free(g: *mut SubtourGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn subtour_graph_vertex_count(g: *const SubtourGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.n())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn subtour_graph_edge_count(g: *const SubtourGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.m())
}

/// Number of locked vertex sets.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn subtour_locked_count(g: *const SubtourGraph, out: *mut usize) -> SubtourStatus {
    guarded(|| {
        let graph = graph_ref(g)?;
        if out.is_null() {
            return fail(SubtourStatus::NullArgument, "null output pointer");
        }
        *out = lift(enumerate_locked(graph, None))?.subgraphs.len();
        Ok(())
    })
}

/// JSON array of the locked sets, each `{U, eH, nH, mH}`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn subtour_locked_json(g: *const SubtourGraph, out: *mut *mut c_char) -> SubtourStatus {
    guarded(|| {
        let graph = graph_ref(g)?;
        let found = lift(enumerate_locked(graph, None))?;
        let text = lift(serde_json::to_string(&found.subgraphs).map_err(Error::from))?;
        write_string(out, text)
    })
}

/// A description (`P-full`, `P-refined`, `P-minimal`, `Q`, `Q-prime`, `K`)
/// as JSON, or as LP text when `lp` is nonzero.
///
/// # Safety
/// `g` must be a live handle, `kind` a NUL-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn subtour_describe(
    g: *const SubtourGraph,
    kind: *const c_char,
    lp: i32,
    out: *mut *mut c_char,
) -> SubtourStatus {
    guarded(|| {
        let graph = graph_ref(g)?;
        let kind: DescriptionKind = lift(read_str(kind)?.parse())?;
        let sys = lift(build(graph, kind, BuildOptions::default()))?;
        let text = if lp != 0 { lift(emit_lp(&sys, None))? } else { lift(sys.to_json())? };
        write_string(out, text)
    })
}

/// Subtour lower bound report as JSON. `weights_json` is a JSON array of
/// rationals, or null for the weights stored in the graph.
///
/// # Safety
/// `g` must be a live handle, `weights_json` null or a NUL-terminated string,
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn subtour_bound(
    g: *const SubtourGraph,
    weights_json: *const c_char,
    out: *mut *mut c_char,
) -> SubtourStatus {
    guarded(|| {
        let graph = graph_ref(g)?;
        let weights = if weights_json.is_null() {
            graph.weight_vector()
        } else {
            lift(serde_json::from_str::<QPoint>(read_str(weights_json)?).map_err(Error::from))?
        };
        let report = lift(bound(graph, &weights, None))?;
        let text = lift(serde_json::to_string(&report).map_err(Error::from))?;
        write_string(out, text)
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn subtour_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::Infeasible), SubtourStatus::Infeasible);
        assert_eq!(status_of(&Error::ScaleLimit("x".into())), SubtourStatus::ScaleLimit);
        assert_eq!(status_of(&Error::Domain("x".into())), SubtourStatus::Domain);
    }
}
