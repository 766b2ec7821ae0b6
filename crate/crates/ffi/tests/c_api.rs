use std::ffi::{c_char, CStr, CString};
use std::ptr;

use gmalg_core::format::{self, TraceFormFile};
use gmalg_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { gmalg_string_free(s) };
    text
}

fn last_error() -> String {
    let p = gmalg_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn build(kind: GmalgBuilder, n: usize, ring: &str) -> *mut GmalgContext {
    let ring = CString::new(ring).unwrap();
    let mut ctx = ptr::null_mut();
    let st = unsafe { gmalg_context_build(kind, n, 1, ring.as_ptr(), &mut ctx) };
    assert_eq!(st, GmalgStatus::Ok);
    ctx
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(gmalg_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn build_query_and_free() {
    let ctx = build(GmalgBuilder::FullMatrix, 3, "fp:5");
    let (mut dim, mut zdim) = (0usize, 0usize);
    unsafe {
        assert_eq!(gmalg_context_dim(ctx, &mut dim), GmalgStatus::Ok);
        assert_eq!(gmalg_center_dim(ctx, &mut zdim), GmalgStatus::Ok);
        gmalg_context_free(ctx);
    }
    assert_eq!((dim, zdim), (9, 1));
}

#[test]
fn json_round_trip_through_a_handle() {
    let ctx = build(GmalgBuilder::Triangular, 3, "q");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gmalg_context_to_json(ctx, &mut s) }, GmalgStatus::Ok);
    let text = take(s);
    let c = CString::new(text.clone()).unwrap();
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { gmalg_context_from_json(c.as_ptr(), &mut again) }, GmalgStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gmalg_context_to_json(again, &mut s) }, GmalgStatus::Ok);
    assert_eq!(take(s), text);
    unsafe {
        gmalg_context_free(ctx);
        gmalg_context_free(again);
    }
}

#[test]
fn report_and_decomposition() {
    let ctx = build(GmalgBuilder::FullMatrix, 3, "fp:5");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gmalg_report_json(ctx, &mut s) }, GmalgStatus::Ok);
    let report = take(s);
    assert!(report.contains("\"loyalty\": \"loyal\""), "{report}");

    let map = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/fixtures/m3_product.json")).unwrap();
    let map = CString::new(map).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gmalg_decompose_trace_json(ctx, map.as_ptr(), &mut s) }, GmalgStatus::Ok);
    let file: TraceFormFile = format::parse(&take(s)).unwrap();
    assert!(file.checks.iter().all(|c| c.holds));
    unsafe { gmalg_context_free(ctx) };
}

#[test]
fn suite_runs_and_is_deterministic() {
    let ctx = build(GmalgBuilder::Triangular, 3, "fp:5");
    let mut a = ptr::null_mut();
    let mut b = ptr::null_mut();
    unsafe {
        assert_eq!(gmalg_suite(ctx, 7, 2, &mut a), GmalgStatus::Ok);
        assert_eq!(gmalg_suite(ctx, 7, 2, &mut b), GmalgStatus::Ok);
        gmalg_context_free(ctx);
    }
    let (a, b) = (take(a), take(b));
    assert_eq!(a, b);
    assert!(!a.contains("FAIL"), "{a}");
}

#[test]
fn errors_map_to_status_codes() {
    let mut ctx = ptr::null_mut();
    let bad = CString::new("{\"format\": ").unwrap();
    assert_eq!(unsafe { gmalg_context_from_json(bad.as_ptr(), &mut ctx) }, GmalgStatus::InvalidInput);
    assert!(ctx.is_null());
    assert!(!last_error().is_empty());

    assert_eq!(unsafe { gmalg_context_from_json(ptr::null(), &mut ctx) }, GmalgStatus::NullPointer);

    let ring = CString::new("fp:4").unwrap();
    let st = unsafe { gmalg_context_build(GmalgBuilder::FullMatrix, 2, 1, ring.as_ptr(), &mut ctx) };
    assert_eq!(st, GmalgStatus::InvalidInput);

    let doubled = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../core/tests/fixtures/m2_doubled_phi.json"
    ))
    .unwrap();
    let doubled = CString::new(doubled).unwrap();
    assert_eq!(unsafe { gmalg_context_from_json(doubled.as_ptr(), &mut ctx) }, GmalgStatus::Failed);
    assert!(last_error().contains("axiom violated"), "{}", last_error());

    let mut dim = 0usize;
    assert_eq!(unsafe { gmalg_context_dim(ptr::null(), &mut dim) }, GmalgStatus::NullPointer);
}

#[test]
fn non_centralizing_trace_is_invalid_input() {
    let ctx = build(GmalgBuilder::FullMatrix, 3, "fp:5");
    let map = CString::new(
        r#"{"kind": "bilinear", "format": "gmalg-map", "ring": "fp:5", "dim": 9, "dst_dim": 9, "entries": [[0, 0, 1, 1]]}"#,
    )
    .unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gmalg_decompose_trace_json(ctx, map.as_ptr(), &mut s) }, GmalgStatus::InvalidInput);
    assert!(s.is_null());
    unsafe { gmalg_context_free(ctx) };
}

#[test]
fn rng_stream_matches_the_frozen_vectors() {
    let mut buf = [0u64; 3];
    assert_eq!(unsafe { gmalg_rng_fill(0, buf.as_mut_ptr(), 3) }, GmalgStatus::Ok);
    assert_eq!(buf, [8916199331640804048, 16032783972208265725, 12954103179475586193]);
    assert_eq!(unsafe { gmalg_rng_fill(42, buf.as_mut_ptr(), 1) }, GmalgStatus::Ok);
    assert_eq!(buf[0], 3580622183945639842);
}

#[test]
fn header_declares_every_entry_point() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/gmalg.h")).unwrap();
    for name in [
        "gmalg_context_from_json",
        "gmalg_context_build",
        "gmalg_context_free",
        "gmalg_decompose_trace_json",
        "gmalg_suite",
        "gmalg_string_free",
        "typedef struct GmalgContext GmalgContext",
        "GMALG_STATUS_PANIC = 4",
    ] {
        assert!(h.contains(name), "{name}");
    }
}
