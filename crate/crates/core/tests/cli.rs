use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gmalg_core::format::{self, LieFile, MapData, TraceFormFile};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn gmalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_matches_committed_fixture() {
    let o = gmalg(&["gen", "--kind", "full-matrix", "--n", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("m2_fp5.json")).unwrap());
}

#[test]
fn gen_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t2.json");
    let o = gmalg(&["gen", "--kind", "triangular", "--n", "2", "--ring", "q", "-o", path_str(&out)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        std::fs::read_to_string(fixture("t2_q.json")).unwrap()
    );
}

#[test]
fn check_reports_hypotheses() {
    let o = gmalg(&["check", path_str(&fixture("m3_fp5.json"))]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["loyalty"], "loyal");
    assert_eq!(v["routes"][0], "central-independent-pair");
}

#[test]
fn doubled_pairing_fails_the_axioms() {
    let o = gmalg(&["check", path_str(&fixture("m2_doubled_phi.json"))]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("axiom violated"), "{}", stderr(&o));
}

#[test]
fn axiom_failure_is_an_input_error_elsewhere() {
    let o = gmalg(&["center", path_str(&fixture("m2_doubled_phi.json"))]);
    assert_eq!(code(&o), 2);
}

#[test]
fn product_trace_decomposes_on_both_paths() {
    let o = gmalg(&[
        "decompose-trace",
        path_str(&fixture("m3_fp5.json")),
        path_str(&fixture("m3_product.json")),
        "--path",
        "both",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let file: TraceFormFile = format::parse(&stdout(&o)).unwrap();
    let form = file.to_form().unwrap();
    // z is the unit of M3 in the (A, M, N, B) coordinates
    let unit: Vec<i64> = vec![1, 0, 0, 0, 0, 1, 0, 0, 1];
    assert_eq!(form.z.iter().map(|s| s.to_i64().unwrap()).collect::<Vec<_>>(), unit);
    assert!(form.mu.matrix.is_zero() && form.nu.is_zero());
    assert!(file.checks.iter().all(|c| c.holds));
}

#[test]
fn non_centralizing_map_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("q.json");
    std::fs::write(
        &map,
        r#"{"kind": "bilinear", "format": "gmalg-map", "ring": "fp:5", "dim": 9, "dst_dim": 9, "entries": [[0, 0, 1, 1]]}"#,
    )
    .unwrap();
    let o = gmalg(&["decompose-trace", path_str(&fixture("m3_fp5.json")), path_str(&map)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("not centralizing"), "{}", stderr(&o));
}

#[test]
fn malformed_json_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"format\": ").unwrap();
    assert_eq!(code(&gmalg(&["check", path_str(&bad)])), 2);
    assert_eq!(code(&gmalg(&["check", "/nonexistent/context.json"])), 2);
}

#[test]
fn ring_flag_must_match_the_file() {
    let o = gmalg(&["--ring", "q", "center", path_str(&fixture("m3_fp5.json"))]);
    assert_eq!(code(&o), 2);
    let o = gmalg(&["--ring", "fp:4", "gen", "--kind", "full-matrix"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn lie_pipeline_recovers_the_sign() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = path_str(&fixture("m3_fp5.json")).to_string();
    for (kind, lambda) in [("conjugation-shift", 1), ("neg-transpose", -1), ("neg-antiautomorphism", -1)] {
        let map = dir.path().join(format!("{kind}.json"));
        let o = gmalg(&["gen", "--kind", kind, "--n", "3", "--seed", "5", "-o", path_str(&map)]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let o = gmalg(&["decompose-lti", &ctx, &ctx, path_str(&map)]);
        assert_eq!(code(&o), 0, "{kind}: {}", stderr(&o));
        let file: LieFile = format::parse(&stdout(&o)).unwrap();
        assert_eq!(file.lambda, lambda, "{kind}");
        assert!(file.checks.iter().all(|c| c.holds));
    }
}

#[test]
fn lie_pipeline_rejects_a_non_bijective_map() {
    let dir = tempfile::tempdir().unwrap();
    let zero = dir.path().join("zero.json");
    let m = gmalg_core::polymap::LinearMapRep::new(gmalg_core::ring::Matrix::zeros(
        gmalg_core::ring::Ring::PrimeField(5),
        9,
        9,
    ));
    std::fs::write(&zero, format::print_map(&MapData::Linear(m), None)).unwrap();
    let ctx = path_str(&fixture("m3_fp5.json")).to_string();
    let o = gmalg(&["decompose-lti", &ctx, &ctx, path_str(&zero)]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_map_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = path_str(&fixture("m3_fp5.json")).to_string();
    let map = dir.path().join("c.json");
    gmalg(&["gen", "--kind", "conjugation", "--n", "3", "-o", path_str(&map)]);
    let ok = gmalg(&["verify-map", &ctx, path_str(&map), "--property", "jordan"]);
    assert_eq!(code(&ok), 0);
    assert_eq!(stdout(&ok), "PASS jordan\n");
    let nt = dir.path().join("nt.json");
    gmalg(&["gen", "--kind", "neg-transpose", "--n", "3", "-o", path_str(&nt)]);
    let bad = gmalg(&["verify-map", &ctx, path_str(&nt), "--property", "jordan"]);
    assert_eq!(code(&bad), 1);
    let lt = gmalg(&["verify-map", &ctx, path_str(&nt), "--property", "lie-triple"]);
    assert_eq!(code(&lt), 0);
    let trace = gmalg(&[
        "verify-map",
        &ctx,
        path_str(&fixture("m3_product.json")),
        "--property",
        "commuting-trace",
    ]);
    assert_eq!(code(&trace), 0);
}

#[test]
fn suite_is_deterministic_and_skips_on_non_loyal_contexts() {
    let dir = tempfile::tempdir().unwrap();
    let cw = dir.path().join("cw.json");
    gmalg(&["gen", "--kind", "coordinatewise", "-o", path_str(&cw)]);
    let a = gmalg(&["suite", path_str(&cw), "--count", "3", "--seed", "9"]);
    let b = gmalg(&["suite", path_str(&cw), "--count", "3", "--seed", "9"]);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("SKIP center.no_zero_divisors"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn peirce_generation_validates_the_idempotent() {
    let ok = gmalg(&["gen", "--kind", "peirce", "--n", "2", "--idempotent", "1,0,0,0"]);
    assert_eq!(code(&ok), 0);
    let ctx = format::parse_context(&stdout(&ok)).unwrap();
    assert_eq!(ctx.dims(), [1, 1, 1, 1]);
    let trivial = gmalg(&["gen", "--kind", "peirce", "--n", "2", "--idempotent", "1,0,0,1"]);
    assert_eq!(code(&trivial), 2);
}

#[test]
fn inflated_with_two_dimensional_identity_form_fails_the_axioms() {
    let o = gmalg(&["gen", "--kind", "inflated", "--dimv", "2", "--ring", "q"]);
    assert_eq!(code(&o), 1);
    let o = gmalg(&["gen", "--kind", "inflated", "--dimv", "2", "--gamma", "0,0;0,0", "--ring", "q"]);
    assert_eq!(code(&o), 0);
}
