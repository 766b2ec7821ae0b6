//! C interface to `gmalg-core`.
//!
//! Contexts live behind an opaque handle; maps and results cross the boundary
//! as the same JSON documents the command line reads and writes. Every entry
//! point returns a [`GmalgStatus`], catches panics, and records a message for
//! [`gmalg_last_error`]. Strings handed out must be released with
//! [`gmalg_string_free`], handles with [`gmalg_context_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gmalg_core::algebra::builders::{full_matrix, upper_triangular};
use gmalg_core::algebra::{AssemblyError, Gma, MoritaContext};
use gmalg_core::center::{HypothesisReport, ReportOptions};
use gmalg_core::decompose::{Decomposer, TraceFailure};
use gmalg_core::format::{self, CheckEntry, ReportFile, TraceFormFile};
use gmalg_core::polymap::{Mode, TraceMap};
use gmalg_core::ring::Ring;
use gmalg_core::rng::Rng;
use gmalg_core::suite::{run_suite, SuiteOptions};

/// Outcome of a call. Numeric values match the command-line exit codes where they overlap.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GmalgStatus {
    Ok = 0,
    /// A property, axiom or decomposition fails.
    Failed = 1,
    /// Malformed input: bad JSON, shapes, ring or parameters.
    InvalidInput = 2,
    NullPointer = 3,
    /// A panic was caught; the library state is unchanged.
    Panic = 4,
}

/// Built-in context families.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GmalgBuilder {
    /// `M_n` split with an `k×k` corner.
    FullMatrix = 0,
    /// Upper triangular `T_n` split with an `k×k` corner.
    Triangular = 1,
}

/// An assembled algebra whose context satisfied every axiom.
pub struct GmalgContext {
    g: Gma,
}

type Failure = (GmalgStatus, String);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("interior NULs removed"));
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn panic_text(p: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic".into()
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GmalgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            GmalgStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(p) => {
            set_error(Some(format!("panic: {}", panic_text(p.as_ref()))));
            GmalgStatus::Panic
        }
    }
}

fn invalid(e: impl ToString) -> Failure {
    (GmalgStatus::InvalidInput, e.to_string())
}

/// # Safety
/// `p` is null or a NUL-terminated string valid for the call.
unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err((GmalgStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(format!("{name} is not UTF-8")))
}

/// # Safety
/// `ctx` is null or a handle from this library that has not been freed.
unsafe fn ctx_arg<'a>(ctx: *const GmalgContext) -> Result<&'a GmalgContext, Failure> {
    ctx.as_ref()
        .ok_or_else(|| (GmalgStatus::NullPointer, "context is null".to_string()))
}

/// # Safety
/// `out` is null or valid for one pointer write.
unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err((GmalgStatus::NullPointer, "output pointer is null".into()));
    }
    *out = CString::new(s).map_err(invalid)?.into_raw();
    Ok(())
}

fn assemble(ctx: MoritaContext) -> Result<Box<GmalgContext>, Failure> {
    match Gma::assemble(ctx) {
        Ok(g) => Ok(Box::new(GmalgContext { g })),
        Err(AssemblyError::Input(e)) => Err(invalid(e)),
        Err(AssemblyError::Axiom(v)) => Err((GmalgStatus::Failed, format!("axiom violated: {v}"))),
    }
}

/// # Safety
/// `out` is null or valid for one pointer write.
unsafe fn put_context(out: *mut *mut GmalgContext, ctx: Box<GmalgContext>) -> Result<(), Failure> {
    if out.is_null() {
        return Err((GmalgStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(ctx);
    Ok(())
}

/// Message of the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn gmalg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gmalg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a context document and checks its axioms. An axiom failure returns
/// `Failed` with the violated law in [`gmalg_last_error`].
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn gmalg_context_from_json(json: *const c_char, out: *mut *mut GmalgContext) -> GmalgStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let ctx = format::parse_context(text).map_err(invalid)?;
        put_context(out, assemble(ctx)?)
    })
}

/// Builds `M_n` or `T_n` with a `split×split` corner over `ring` (`"q"` or `"fp:<p>"`).
///
/// # Safety
/// `ring` is a NUL-terminated string; `out` is valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn gmalg_context_build(
    kind: GmalgBuilder,
    n: usize,
    split: usize,
    ring: *const c_char,
    out: *mut *mut GmalgContext,
) -> GmalgStatus {
    guard(|| {
        let ring: Ring = str_arg(ring, "ring")?.parse().map_err(invalid)?;
        let ctx = match kind {
            GmalgBuilder::FullMatrix => full_matrix(n, split, ring),
            GmalgBuilder::Triangular => upper_triangular(n, split, ring),
        }
        .map_err(invalid)?;
        put_context(out, assemble(ctx)?)
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `ctx` is null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn gmalg_context_free(ctx: *mut GmalgContext) {
    if !ctx.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(ctx))));
    }
}

/// Dimension of the assembled algebra.
///
/// # Safety
/// `ctx` is a live handle; `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn gmalg_context_dim(ctx: *const GmalgContext, out: *mut usize) -> GmalgStatus {
    guard(|| {
        let c = ctx_arg(ctx)?;
        if out.is_null() {
            return Err((GmalgStatus::NullPointer, "output pointer is null".into()));
        }
        *out = c.g.dim();
        Ok(())
    })
}

/// Dimension of the center Z(G).
///
/// # Safety
/// `ctx` is a live handle; `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn gmalg_center_dim(ctx: *const GmalgContext, out: *mut usize) -> GmalgStatus {
    guard(|| {
        let c = ctx_arg(ctx)?;
        if out.is_null() {
            return Err((GmalgStatus::NullPointer, "output pointer is null".into()));
        }
        *out = c.g.center().dim();
        Ok(())
    })
}

/// The context document of a handle.
///
/// # Safety
/// `ctx` is a live handle; `out` is valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn gmalg_context_to_json(ctx: *const GmalgContext, out: *mut *mut c_char) -> GmalgStatus {
    guard(|| {
        let c = ctx_arg(ctx)?;
        put_string(out, format::print_context(c.g.context()))
    })
}

/// The hypothesis report document, with default loyalty bounds and seed 0.
///
/// # Safety
/// `ctx` is a live handle; `out` is valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn gmalg_report_json(ctx: *const GmalgContext, out: *mut *mut c_char) -> GmalgStatus {
    guard(|| {
        let c = ctx_arg(ctx)?;
        let r = HypothesisReport::compute(&c.g, &ReportOptions::default());
        put_string(out, format::print(&ReportFile::new(c.g.context(), &r)))
    })
}

/// Generic proper-form decomposition of a centralizing trace given as a
/// bilinear map document. A trace that is not centralizing is `InvalidInput`;
/// one that has no proper form is `Failed`.
///
/// # Safety
/// `ctx` is a live handle, `map_json` a NUL-terminated string and `out` valid
/// for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn gmalg_decompose_trace_json(
    ctx: *const GmalgContext,
    map_json: *const c_char,
    out: *mut *mut c_char,
) -> GmalgStatus {
    guard(|| {
        let c = ctx_arg(ctx)?;
        let q = format::parse_map(str_arg(map_json, "map_json")?)
            .and_then(|m| m.into_bilinear())
            .map_err(invalid)?;
        if q.tensor.ring() != c.g.ring() {
            return Err(invalid(format!("map over {} for an algebra over {}", q.tensor.ring(), c.g.ring())));
        }
        q.check_shape(c.g.dim()).map_err(invalid)?;
        let t = TraceMap::from_bilinear(&q);
        let dec = Decomposer::new(&c.g, &ReportOptions::default());
        let d = dec.generic(&t, Mode::Centralizing).map_err(|f| match f {
            TraceFailure::PredicateFails { .. } => invalid(f),
            f => (GmalgStatus::Failed, f.to_string()),
        })?;
        let checks = vec![
            CheckEntry::new("reconstructs_input", d.form.reconstruct(&c.g) == t, ""),
            CheckEntry::new("parts_central", d.form.centrality_defect(&c.g).is_none(), ""),
        ];
        let route = dec.route().map(|r| r.tag());
        let file = TraceFormFile::new(&d.form, Mode::Centralizing.tag(), "generic", route, checks);
        put_string(out, format::print(&file))
    })
}

/// Runs the property suite and returns its text report. `Failed` when a
/// property fails; the report is still written.
///
/// # Safety
/// `ctx` is a live handle; `out` is valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn gmalg_suite(
    ctx: *const GmalgContext,
    seed: u64,
    count: usize,
    out: *mut *mut c_char,
) -> GmalgStatus {
    guard(|| {
        let c = ctx_arg(ctx)?;
        let opts = SuiteOptions {
            seed,
            count,
            ..SuiteOptions::default()
        };
        let report = run_suite(&c.g, &opts);
        put_string(out, report.render())?;
        if report.passed() {
            Ok(())
        } else {
            Err((GmalgStatus::Failed, "suite has failing properties".into()))
        }
    })
}

/// Fills `out[0..len]` with the generator stream for `seed`.
///
/// # Safety
/// `out` is valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn gmalg_rng_fill(seed: u64, out: *mut u64, len: usize) -> GmalgStatus {
    guard(|| {
        if out.is_null() && len > 0 {
            return Err((GmalgStatus::NullPointer, "output buffer is null".into()));
        }
        let mut rng = Rng::new(seed);
        for i in 0..len {
            *out.add(i) = rng.next_u64();
        }
        Ok(())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` is null or a string from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn gmalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panics_become_status_codes() {
        let prev = std::panic::take_hook();
        std::panic::set_hook(Box::new(|_| {}));
        let status = guard(|| panic!("boom"));
        std::panic::set_hook(prev);
        assert_eq!(status, GmalgStatus::Panic);
        let msg = unsafe { CStr::from_ptr(gmalg_last_error()) }.to_str().unwrap();
        assert_eq!(msg, "panic: boom");
    }

    #[test]
    fn success_clears_the_error() {
        assert_eq!(guard(|| Err(invalid("bad"))), GmalgStatus::InvalidInput);
        assert!(!gmalg_last_error().is_null());
        assert_eq!(guard(|| Ok(())), GmalgStatus::Ok);
        assert!(gmalg_last_error().is_null());
    }
}
