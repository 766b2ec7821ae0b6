//! JSON documents for contexts, maps and results.
//!
//! Scalars are JSON integers when they fit in `i64`, otherwise strings (`"a/b"`
//! or a long integer). Keys keep declaration order and [`print`] lays values out
//! deterministically, so equal objects always print to identical bytes.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{AlgebraSpec, BimoduleSpec, MoritaContext, Tensor3};
use crate::center::{CenterData, HypothesisReport, Loyalty};
use crate::decompose::{LieChecks, LieTripleDecomposition, ProperTraceForm, ShapeCheck};
use crate::error::{Error, Result};
use crate::polymap::{pair_count, pair_index, pairs, BilinearMapRep, LinearMapRep, TraceMap};
use crate::ring::{Matrix, Ring, Scalar, Subspace};

pub const CONTEXT_FORMAT: &str = "gmalg-context";
pub const ALGEBRA_FORMAT: &str = "gmalg-algebra";
pub const MAP_FORMAT: &str = "gmalg-map";
pub const TRACE_FORM_FORMAT: &str = "gmalg-trace-form";
pub const LIE_FORMAT: &str = "gmalg-lie-decomposition";
pub const REPORT_FORMAT: &str = "gmalg-report";
pub const CENTER_FORMAT: &str = "gmalg-center";

/// A scalar as it appears in a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    pub fn from_scalar(s: &Scalar) -> ScalarText {
        match s.to_i64() {
            Some(v) => ScalarText::Int(v),
            None => ScalarText::Text(s.to_string()),
        }
    }

    /// Integers outside `[0, p)` are reduced modulo `p`.
    pub fn to_scalar(&self, ring: Ring) -> Result<Scalar> {
        match self {
            ScalarText::Int(v) => Ok(ring.from_i64(*v)),
            ScalarText::Text(t) => ring.parse_scalar(t),
        }
    }
}

/// `[i, j, k, value]`.
pub type Entry = (usize, usize, usize, ScalarText);

pub fn vec_out(v: &[Scalar]) -> Vec<ScalarText> {
    v.iter().map(ScalarText::from_scalar).collect()
}

pub fn vec_in(v: &[ScalarText], ring: Ring, len: usize, what: &str) -> Result<Vec<Scalar>> {
    if v.len() != len {
        return Err(Error::Shape(format!("{what}: {} entries where {len} are required", v.len())));
    }
    v.iter().map(|s| s.to_scalar(ring)).collect()
}

fn vecs_out(vs: &[Vec<Scalar>]) -> Vec<Vec<ScalarText>> {
    vs.iter().map(|v| vec_out(v)).collect()
}

fn vecs_in(vs: &[Vec<ScalarText>], ring: Ring, len: usize, what: &str) -> Result<Vec<Vec<Scalar>>> {
    vs.iter().map(|v| vec_in(v, ring, len, what)).collect()
}

pub fn tensor_out(t: &Tensor3) -> Vec<Entry> {
    t.entries()
        .map(|(i, j, k, v)| (i, j, k, ScalarText::from_scalar(v)))
        .collect()
}

/// Out-of-range or repeated indices are rejected; zero values are dropped.
pub fn tensor_in(entries: &[Entry], ring: Ring, shape: (usize, usize, usize), what: &str) -> Result<Tensor3> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(entries.len());
    for (i, j, k, v) in entries {
        if *i >= shape.0 || *j >= shape.1 || *k >= shape.2 {
            return Err(Error::Shape(format!("{what}: index [{i}, {j}, {k}] outside {shape:?}")));
        }
        if !seen.insert((*i, *j, *k)) {
            return Err(Error::Parse(format!("{what}: index [{i}, {j}, {k}] repeated")));
        }
        out.push((*i, *j, *k, v.to_scalar(ring)?));
    }
    Ok(Tensor3::from_entries(ring, shape, out))
}

pub fn matrix_out(m: &Matrix) -> Vec<Vec<ScalarText>> {
    (0..m.rows()).map(|i| vec_out(m.row(i))).collect()
}

pub fn matrix_in(rows: &[Vec<ScalarText>], ring: Ring, r: usize, c: usize, what: &str) -> Result<Matrix> {
    if rows.len() != r {
        return Err(Error::Shape(format!("{what}: {} rows where {r} are required", rows.len())));
    }
    Ok(Matrix::from_rows(ring, c, vecs_in(rows, ring, c, what)?))
}

/// Symmetric values `s(e_i, e_j)`, `i ≤ j`, as entries `[i, j, k, v]`.
fn trace_out(t: &TraceMap) -> Vec<Entry> {
    let d = t.dim();
    let mut out = Vec::new();
    for (i, j) in pairs(d) {
        for (k, v) in t.sym(i, j).iter().enumerate() {
            if !v.is_zero() {
                out.push((i, j, k, ScalarText::from_scalar(v)));
            }
        }
    }
    out
}

fn trace_in(entries: &[Entry], ring: Ring, d: usize, what: &str) -> Result<TraceMap> {
    let t = tensor_in(entries, ring, (d, d, d), what)?;
    let mut s = vec![ring.zeros(d); pair_count(d)];
    for (i, j, k, v) in t.entries() {
        if i > j {
            return Err(Error::Parse(format!("{what}: entry [{i}, {j}, {k}] below the diagonal")));
        }
        s[pair_index(d, i, j)][k] = v.clone();
    }
    Ok(TraceMap::from_symmetric(ring, d, d, s))
}

fn check_format(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(Error::Parse(format!("expected a {expected} document, found {found:?}")));
    }
    Ok(())
}

fn parse_ring(text: &str) -> Result<Ring> {
    text.parse()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraBlock {
    pub dim: usize,
    pub unit: Vec<ScalarText>,
    pub mul: Vec<Entry>,
}

impl AlgebraBlock {
    fn from_algebra(a: &AlgebraSpec) -> AlgebraBlock {
        AlgebraBlock {
            dim: a.dim,
            unit: vec_out(&a.unit),
            mul: tensor_out(&a.mul),
        }
    }

    fn to_algebra(&self, ring: Ring, name: &str) -> Result<AlgebraSpec> {
        let d = self.dim;
        let mul = tensor_in(&self.mul, ring, (d, d, d), &format!("{name}.mul"))?;
        let unit = vec_in(&self.unit, ring, d, &format!("{name}.unit"))?;
        AlgebraSpec::new(ring, d, mul, unit)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleBlock {
    pub dim: usize,
    pub left: Vec<Entry>,
    pub right: Vec<Entry>,
}

impl ModuleBlock {
    fn from_module(m: &BimoduleSpec) -> ModuleBlock {
        ModuleBlock {
            dim: m.dim,
            left: tensor_out(&m.left),
            right: tensor_out(&m.right),
        }
    }

    fn to_module(&self, ring: Ring, left_dim: usize, right_dim: usize, name: &str) -> Result<BimoduleSpec> {
        let d = self.dim;
        Ok(BimoduleSpec {
            dim: d,
            left: tensor_in(&self.left, ring, (left_dim, d, d), &format!("{name}.left"))?,
            right: tensor_in(&self.right, ring, (d, right_dim, d), &format!("{name}.right"))?,
        })
    }
}

/// Structure constants of a context; `phi` is `M × N → A`, `psi` is `N × M → B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextFile {
    pub format: String,
    pub ring: String,
    pub a: AlgebraBlock,
    pub m: ModuleBlock,
    pub n: ModuleBlock,
    pub b: AlgebraBlock,
    pub phi: Vec<Entry>,
    pub psi: Vec<Entry>,
}

impl ContextFile {
    pub fn from_context(ctx: &MoritaContext) -> ContextFile {
        ContextFile {
            format: CONTEXT_FORMAT.into(),
            ring: ctx.ring.to_string(),
            a: AlgebraBlock::from_algebra(&ctx.a),
            m: ModuleBlock::from_module(&ctx.m),
            n: ModuleBlock::from_module(&ctx.n),
            b: AlgebraBlock::from_algebra(&ctx.b),
            phi: tensor_out(&ctx.phi),
            psi: tensor_out(&ctx.psi),
        }
    }

    /// Shapes are validated; axioms are not.
    pub fn to_context(&self) -> Result<MoritaContext> {
        check_format(&self.format, CONTEXT_FORMAT)?;
        let ring = parse_ring(&self.ring)?;
        let a = self.a.to_algebra(ring, "a")?;
        let b = self.b.to_algebra(ring, "b")?;
        let m = self.m.to_module(ring, a.dim, b.dim, "m")?;
        let n = self.n.to_module(ring, b.dim, a.dim, "n")?;
        let phi = tensor_in(&self.phi, ring, (m.dim, n.dim, a.dim), "phi")?;
        let psi = tensor_in(&self.psi, ring, (n.dim, m.dim, b.dim), "psi")?;
        let ctx = MoritaContext { ring, a, b, m, n, phi, psi };
        ctx.check_shapes()?;
        Ok(ctx)
    }
}

/// A standalone unital algebra, the input of the Peirce construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub format: String,
    pub ring: String,
    pub dim: usize,
    pub unit: Vec<ScalarText>,
    pub mul: Vec<Entry>,
}

impl AlgebraFile {
    pub fn from_algebra(a: &AlgebraSpec) -> AlgebraFile {
        let block = AlgebraBlock::from_algebra(a);
        AlgebraFile {
            format: ALGEBRA_FORMAT.into(),
            ring: a.ring.to_string(),
            dim: block.dim,
            unit: block.unit,
            mul: block.mul,
        }
    }

    pub fn to_algebra(&self) -> Result<AlgebraSpec> {
        check_format(&self.format, ALGEBRA_FORMAT)?;
        let block = AlgebraBlock {
            dim: self.dim,
            unit: self.unit.clone(),
            mul: self.mul.clone(),
        };
        block.to_algebra(parse_ring(&self.ring)?, "algebra")
    }
}

/// Where a generated map came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub generator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Linear maps are dense row-major (column `i` is the image of `e_i`);
/// bilinear maps are sparse entries `q(e_i, e_j)_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MapFile {
    Linear {
        format: String,
        ring: String,
        rows: usize,
        cols: usize,
        matrix: Vec<Vec<ScalarText>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        provenance: Option<Provenance>,
    },
    Bilinear {
        format: String,
        ring: String,
        dim: usize,
        dst_dim: usize,
        entries: Vec<Entry>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        provenance: Option<Provenance>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapData {
    Linear(LinearMapRep),
    Bilinear(BilinearMapRep),
}

impl MapData {
    pub fn kind(&self) -> &'static str {
        match self {
            MapData::Linear(_) => "linear",
            MapData::Bilinear(_) => "bilinear",
        }
    }

    pub fn ring(&self) -> Ring {
        match self {
            MapData::Linear(l) => l.ring(),
            MapData::Bilinear(q) => q.tensor.ring(),
        }
    }

    pub fn into_linear(self) -> Result<LinearMapRep> {
        match self {
            MapData::Linear(l) => Ok(l),
            MapData::Bilinear(_) => Err(Error::Shape("a linear map is required, found a bilinear one".into())),
        }
    }

    pub fn into_bilinear(self) -> Result<BilinearMapRep> {
        match self {
            MapData::Bilinear(q) => Ok(q),
            MapData::Linear(_) => Err(Error::Shape("a bilinear map is required, found a linear one".into())),
        }
    }
}

impl MapFile {
    pub fn new(map: &MapData, provenance: Option<Provenance>) -> MapFile {
        match map {
            MapData::Linear(l) => MapFile::Linear {
                format: MAP_FORMAT.into(),
                ring: l.ring().to_string(),
                rows: l.dst_dim(),
                cols: l.src_dim(),
                matrix: matrix_out(&l.matrix),
                provenance,
            },
            MapData::Bilinear(q) => MapFile::Bilinear {
                format: MAP_FORMAT.into(),
                ring: q.tensor.ring().to_string(),
                dim: q.src_dim(),
                dst_dim: q.dst_dim(),
                entries: tensor_out(&q.tensor),
                provenance,
            },
        }
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        match self {
            MapFile::Linear { provenance, .. } | MapFile::Bilinear { provenance, .. } => provenance.as_ref(),
        }
    }

    pub fn to_map(&self) -> Result<MapData> {
        match self {
            MapFile::Linear {
                format,
                ring,
                rows,
                cols,
                matrix,
                ..
            } => {
                check_format(format, MAP_FORMAT)?;
                let ring = parse_ring(ring)?;
                Ok(MapData::Linear(LinearMapRep::new(matrix_in(matrix, ring, *rows, *cols, "matrix")?)))
            }
            MapFile::Bilinear {
                format,
                ring,
                dim,
                dst_dim,
                entries,
                ..
            } => {
                check_format(format, MAP_FORMAT)?;
                let ring = parse_ring(ring)?;
                let t = tensor_in(entries, ring, (*dim, *dim, *dst_dim), "entries")?;
                Ok(MapData::Bilinear(BilinearMapRep::new(t)))
            }
        }
    }
}

/// A named verdict inside a result document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckEntry {
    pub name: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckEntry {
    pub fn new(name: &str, holds: bool, detail: impl Into<String>) -> CheckEntry {
        CheckEntry {
            name: name.to_string(),
            holds,
            detail: detail.into(),
        }
    }
}

impl From<&ShapeCheck> for CheckEntry {
    fn from(c: &ShapeCheck) -> CheckEntry {
        CheckEntry::new(c.name, c.holds, c.detail.clone())
    }
}

pub fn lie_check_entries(c: &LieChecks) -> Vec<CheckEntry> {
    let mut out = vec![
        CheckEntry::new("m_jordan", c.jordan, ""),
        CheckEntry::new("m_injective", c.injective, ""),
        CheckEntry::new("n_central_valued", c.n_central, ""),
        CheckEntry::new("n_kills_second_commutators", c.n_kills_second_commutators, ""),
    ];
    if let Some(h) = c.unit_preserved {
        out.push(CheckEntry::new("m_unit_preserved", h, ""));
    }
    if let Some(h) = c.surjective {
        out.push(CheckEntry::new("m_surjective", h, ""));
    }
    out
}

/// `T(x) = z x² + μ(x) x + ν(x)` with provenance and verification verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceFormFile {
    pub format: String,
    pub ring: String,
    pub dim: usize,
    pub mode: String,
    pub path: String,
    pub route: Option<String>,
    pub z: Vec<ScalarText>,
    pub mu: Vec<Vec<ScalarText>>,
    pub nu: Vec<Entry>,
    pub checks: Vec<CheckEntry>,
}

impl TraceFormFile {
    pub fn new(form: &ProperTraceForm, mode: &str, path: &str, route: Option<&str>, checks: Vec<CheckEntry>) -> TraceFormFile {
        TraceFormFile {
            format: TRACE_FORM_FORMAT.into(),
            ring: form.mu.ring().to_string(),
            dim: form.z.len(),
            mode: mode.into(),
            path: path.into(),
            route: route.map(str::to_string),
            z: vec_out(&form.z),
            mu: matrix_out(&form.mu.matrix),
            nu: trace_out(&form.nu),
            checks,
        }
    }

    pub fn to_form(&self) -> Result<ProperTraceForm> {
        check_format(&self.format, TRACE_FORM_FORMAT)?;
        let ring = parse_ring(&self.ring)?;
        let d = self.dim;
        Ok(ProperTraceForm {
            z: vec_in(&self.z, ring, d, "z")?,
            mu: LinearMapRep::new(matrix_in(&self.mu, ring, d, d, "mu")?),
            nu: trace_in(&self.nu, ring, d, "nu")?,
        })
    }
}

/// `l = λ m + n` together with the auxiliary `μ₁`, `ν₁` on the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieFile {
    pub format: String,
    pub ring: String,
    pub src_dim: usize,
    pub dst_dim: usize,
    pub lambda: i8,
    pub m: Vec<Vec<ScalarText>>,
    pub n: Vec<Vec<ScalarText>>,
    pub mu1: Vec<Vec<ScalarText>>,
    pub nu1: Vec<Entry>,
    pub checks: Vec<CheckEntry>,
}

/// The numeric parts of a Lie decomposition read back from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieParts {
    pub lambda: i8,
    pub m: LinearMapRep,
    pub n: LinearMapRep,
    pub mu1: LinearMapRep,
    pub nu1: TraceMap,
}

impl LieFile {
    pub fn new(dec: &LieTripleDecomposition) -> LieFile {
        LieFile {
            format: LIE_FORMAT.into(),
            ring: dec.m.ring().to_string(),
            src_dim: dec.m.src_dim(),
            dst_dim: dec.m.dst_dim(),
            lambda: dec.lambda,
            m: matrix_out(&dec.m.matrix),
            n: matrix_out(&dec.n.matrix),
            mu1: matrix_out(&dec.mu1.matrix),
            nu1: trace_out(&dec.nu1),
            checks: lie_check_entries(&dec.checks),
        }
    }

    pub fn to_parts(&self) -> Result<LieParts> {
        check_format(&self.format, LIE_FORMAT)?;
        if self.lambda != 1 && self.lambda != -1 {
            return Err(Error::Parse(format!("lambda must be 1 or -1, found {}", self.lambda)));
        }
        let ring = parse_ring(&self.ring)?;
        let (s, t) = (self.src_dim, self.dst_dim);
        Ok(LieParts {
            lambda: self.lambda,
            m: LinearMapRep::new(matrix_in(&self.m, ring, t, s, "m")?),
            n: LinearMapRep::new(matrix_in(&self.n, ring, t, s, "n")?),
            mu1: LinearMapRep::new(matrix_in(&self.mu1, ring, t, t, "mu1")?),
            nu1: trace_in(&self.nu1, ring, t, "nu1")?,
        })
    }
}

/// Pair of witness elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessPair {
    pub first: Vec<ScalarText>,
    pub second: Vec<ScalarText>,
}

impl WitnessPair {
    fn new(a: &[Scalar], b: &[Scalar]) -> WitnessPair {
        WitnessPair {
            first: vec_out(a),
            second: vec_out(b),
        }
    }
}

/// Every hypothesis entry of a context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub format: String,
    pub ring: String,
    pub dims: [usize; 4],
    pub axioms_hold: bool,
    pub faithful_left: bool,
    pub faithful_right: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unfaithful_left_witness: Option<Vec<ScalarText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unfaithful_right_witness: Option<Vec<ScalarText>>,
    /// `loyal`, `not-loyal` or `unknown`.
    pub loyalty: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loyalty_witness: Option<WitnessPair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loyalty_note: Option<String>,
    pub dim_center: usize,
    pub z_a_eq_pi_a: bool,
    pub z_a_ne_a: bool,
    pub z_b_eq_pi_b: bool,
    pub z_b_ne_b: bool,
    pub commuting_proper_on_a: bool,
    pub commuting_proper_on_b: bool,
    pub a_noncommutative: bool,
    pub b_noncommutative: bool,
    pub central_over_ring: bool,
    pub b_central: bool,
    pub scalar_torsion_free: bool,
    pub two_torsion_free: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub independent_pair: Option<WitnessPair>,
    pub phi_available: bool,
    pub routes: Vec<String>,
}

impl ReportFile {
    pub fn new(ctx: &MoritaContext, r: &HypothesisReport) -> ReportFile {
        let (loyalty, loyalty_witness, loyalty_note) = match &r.loyal {
            Loyalty::Loyal => ("loyal", None, None),
            Loyalty::NotLoyal { a, b } => ("not-loyal", Some(WitnessPair::new(a, b)), None),
            Loyalty::Unknown(why) => ("unknown", None, Some(why.clone())),
        };
        ReportFile {
            format: REPORT_FORMAT.into(),
            ring: ctx.ring.to_string(),
            dims: ctx.dims(),
            axioms_hold: r.morita_ok,
            faithful_left: r.faithful.left,
            faithful_right: r.faithful.right,
            unfaithful_left_witness: r.faithful.left_witness.as_deref().map(vec_out),
            unfaithful_right_witness: r.faithful.right_witness.as_deref().map(vec_out),
            loyalty: loyalty.into(),
            loyalty_witness,
            loyalty_note,
            dim_center: r.dim_center,
            z_a_eq_pi_a: r.z_a_eq_pi_a,
            z_a_ne_a: r.z_a_ne_a,
            z_b_eq_pi_b: r.z_b_eq_pi_b,
            z_b_ne_b: r.z_b_ne_b,
            commuting_proper_on_a: r.commuting_proper_on_a,
            commuting_proper_on_b: r.commuting_proper_on_b,
            a_noncommutative: r.a_noncommutative,
            b_noncommutative: r.b_noncommutative,
            central_over_ring: r.central_over_r,
            b_central: r.b_central,
            scalar_torsion_free: r.scalar_torsion_free,
            two_torsion_free: r.two_torsionfree,
            independent_pair: r.independent_pair.as_ref().map(|(m, b)| WitnessPair::new(m, b)),
            phi_available: r.phi_available,
            routes: r.routes.iter().map(|x| x.tag().to_string()).collect(),
        }
    }
}

/// Bases of Z(G), Z(A), Z(B) and the projections, plus φ when available.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CenterFile {
    pub format: String,
    pub ring: String,
    pub dim: usize,
    pub z_g: Vec<Vec<ScalarText>>,
    pub z_a: Vec<Vec<ScalarText>>,
    pub z_b: Vec<Vec<ScalarText>>,
    pub pi_a: Vec<Vec<ScalarText>>,
    pub pi_b: Vec<Vec<ScalarText>>,
    /// Coordinates of Z(G) chosen as complement pivots.
    pub complement: Vec<usize>,
    /// Matrix of φ from the `pi_a` basis to the `pi_b` basis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Vec<ScalarText>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_unavailable: Option<String>,
}

impl CenterFile {
    pub fn new(c: &CenterData) -> CenterFile {
        let basis = |s: &Subspace| vecs_out(s.basis());
        let (phi, phi_unavailable) = match &c.phi {
            Ok(p) => (Some(matrix_out(&p.matrix())), None),
            Err(why) => (None, Some(why.clone())),
        };
        CenterFile {
            format: CENTER_FORMAT.into(),
            ring: c.ring.to_string(),
            dim: c.dim(),
            z_g: basis(&c.z_g),
            z_a: basis(&c.z_a),
            z_b: basis(&c.z_b),
            pi_a: basis(&c.pi_a),
            pi_b: basis(&c.pi_b),
            complement: c.z_g.complement().to_vec(),
            phi,
            phi_unavailable,
        }
    }
}

/// Deterministic layout: objects one key per line, arrays of scalars inline,
/// arrays of arrays one element per line.
pub fn print_value(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn is_leaf(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| " ".repeat(n);
    match v {
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (n, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 2));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 2, out);
                out.push_str(if n + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(xs) if xs.iter().all(is_leaf) => {
            let parts: Vec<String> = xs.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(xs) => {
            out.push_str("[\n");
            for (n, x) in xs.iter().enumerate() {
                out.push_str(&pad(indent + 2));
                write_value(x, indent + 2, out);
                out.push_str(if n + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        leaf => out.push_str(&leaf.to_string()),
    }
}

pub fn print<T: Serialize>(x: &T) -> String {
    print_value(&serde_json::to_value(x).expect("document types serialize to JSON"))
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn print_context(ctx: &MoritaContext) -> String {
    print(&ContextFile::from_context(ctx))
}

pub fn parse_context(text: &str) -> Result<MoritaContext> {
    parse::<ContextFile>(text)?.to_context()
}

pub fn print_map(map: &MapData, provenance: Option<Provenance>) -> String {
    print(&MapFile::new(map, provenance))
}

pub fn parse_map(text: &str) -> Result<MapData> {
    parse::<MapFile>(text)?.to_map()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builders::{coordinatewise, full_matrix, inflated, upper_triangular};
    use crate::algebra::Gma;
    use crate::decompose::random_proper_trace;

    fn contexts() -> Vec<MoritaContext> {
        let q = Ring::Rational;
        let f5 = Ring::PrimeField(5);
        vec![
            full_matrix(3, 1, f5).unwrap(),
            upper_triangular(3, 2, q).unwrap(),
            inflated(q, 1, &Matrix::from_i64(q, &[&[1]])).unwrap(),
            coordinatewise(f5),
        ]
    }

    #[test]
    fn contexts_round_trip_byte_exact() {
        for ctx in contexts() {
            let text = print_context(&ctx);
            let back = parse_context(&text).unwrap();
            assert_eq!(back, ctx);
            assert_eq!(print_context(&back), text);
        }
    }

    #[test]
    fn fractions_print_as_strings() {
        let q = Ring::Rational;
        let m = LinearMapRep::new(Matrix::from_rows(q, 2, vec![vec![q.from_ratio(1, 2), q.from_i64(-3)]]));
        let text = print_map(&MapData::Linear(m.clone()), None);
        assert!(text.contains("[\"1/2\", -3]"), "{text}");
        assert_eq!(parse_map(&text).unwrap(), MapData::Linear(m));
    }

    #[test]
    fn maps_round_trip_with_provenance() {
        let f5 = Ring::PrimeField(5);
        let g = Gma::assemble(full_matrix(2, 1, f5).unwrap()).unwrap();
        let q = random_proper_trace(&g, 7);
        let prov = Provenance {
            generator: "proper-trace".into(),
            seed: Some(7),
        };
        let text = print_map(&MapData::Bilinear(q.clone()), Some(prov.clone()));
        let file: MapFile = parse(&text).unwrap();
        assert_eq!(file.provenance(), Some(&prov));
        assert_eq!(file.to_map().unwrap(), MapData::Bilinear(q));
        assert_eq!(print(&file), text);
    }

    #[test]
    fn trace_forms_round_trip() {
        let q = Ring::Rational;
        let g = Gma::assemble(upper_triangular(2, 1, q).unwrap()).unwrap();
        let mut rng = crate::rng::Rng::new(3);
        let form = ProperTraceForm::random(&g, &mut rng);
        let file = TraceFormFile::new(&form, "centralizing", "generic", None, vec![CheckEntry::new("x", true, "")]);
        let text = print(&file);
        let back: TraceFormFile = parse(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_form().unwrap(), form);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        let f5 = Ring::PrimeField(5);
        let mut file = ContextFile::from_context(&full_matrix(2, 1, f5).unwrap());
        file.phi.push((9, 0, 0, ScalarText::Int(1)));
        assert!(matches!(file.to_context(), Err(Error::Shape(_))));
        let mut file = ContextFile::from_context(&full_matrix(2, 1, f5).unwrap());
        file.ring = "fp:4".into();
        assert!(matches!(file.to_context(), Err(Error::InvalidRing(_))));
        file.format = "something-else".into();
        assert!(matches!(file.to_context(), Err(Error::Parse(_))));
        assert!(matches!(parse_context("{"), Err(Error::Parse(_))));
        let text = print_context(&full_matrix(2, 1, f5).unwrap()).replace("\"ring\"", "\"rng\"");
        assert!(matches!(parse_context(&text), Err(Error::Parse(_))));
    }
}
