//! The `gmalg` command line. Exit codes: 0 the checked property holds, 1 a
//! property or decomposition fails, 2 the input is malformed.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::builders::{
    coordinatewise, full_matrix, inflated, matrix_algebra, peirce, upper_triangular, MatrixLayout,
};
use crate::algebra::{AssemblyError, Gma, MoritaContext};
use crate::center::{HypothesisReport, LoyaltyOptions, ReportOptions};
use crate::decompose::{
    add_random_skew, decompose_lie_triple_iso, neg_transpose, random_lie_triple_iso, random_proper_trace,
    Decomposer, LieShape, TraceDecomposition, TraceFailure,
};
use crate::error::Error;
use crate::format::{
    self, AlgebraFile, CenterFile, CheckEntry, LieFile, MapData, Provenance, ReportFile, TraceFormFile,
};
use crate::polymap::{
    central_valued, is_centralizing_linear, is_centralizing_trace, is_commuting_linear, is_commuting_trace,
    is_jordan_hom, is_lie_triple_hom, vanishes_on_second_commutators, BilinearMapRep, LinearMapRep, Mode,
    PolyWitness, TraceMap, Verdict, DEFAULT_MAX_DIM,
};
use crate::ring::{format_vec, Matrix, Ring};
use crate::rng::Rng;
use crate::suite::{run_suite, SuiteOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "gmalg", version, about = "Exact computations in generalized matrix algebras")]
pub struct Cli {
    /// Base ring: `q` or `fp:<prime>`. Generators default to fp:5; other commands
    /// read the ring from their files and reject a conflicting value.
    #[arg(long, global = true)]
    pub ring: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest algebra dimension for the centralizing-space computation.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
    /// Largest number of candidates enumerated by the loyalty check.
    #[arg(long, global = true)]
    pub loyalty_bound: Option<u64>,
    /// Write the result document here instead of stdout.
    #[arg(short = 'o', long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a context or a map.
    Gen(GenArgs),
    /// Axioms and hypothesis report of a context.
    Check { context: PathBuf },
    /// Centers, projections and φ.
    Center { context: PathBuf },
    /// Put a trace in proper form `z x² + μ(x) x + ν(x)`.
    DecomposeTrace {
        context: PathBuf,
        map: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Centralizing)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = PathArg::Generic)]
        path: PathArg,
    },
    /// Split a Lie triple isomorphism as `λ m + n`.
    DecomposeLti {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
    },
    /// Decide one property of a map.
    VerifyMap {
        context: PathBuf,
        map: PathBuf,
        #[arg(long, value_enum)]
        property: PropertyArg,
        /// Target context for maps between two algebras; defaults to the source.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Run the property suite.
    Suite {
        context: PathBuf,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    /// Matrix size for full, triangular and Lie kinds.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Corner size k: A is k×k.
    #[arg(long, default_value_t = 1)]
    pub split: usize,
    #[arg(long, default_value_t = 1)]
    pub dimv: usize,
    /// Symmetric form for the inflated kind, rows separated by `;`, entries by `,`.
    /// Defaults to the identity.
    #[arg(long)]
    pub gamma: Option<String>,
    /// Algebra document for the Peirce kind; defaults to the full matrix algebra of size n.
    #[arg(long)]
    pub algebra: Option<PathBuf>,
    /// Idempotent coordinates for the Peirce kind, comma separated.
    #[arg(long)]
    pub idempotent: Option<String>,
    /// Context document for map kinds built on an algebra.
    #[arg(long)]
    pub context: Option<PathBuf>,
    /// Coefficient c of the `c·tr(x)·1` shift.
    #[arg(long, default_value_t = 1)]
    pub shift: i64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    FullMatrix,
    Triangular,
    Inflated,
    Peirce,
    Coordinatewise,
    /// `q(x, y) = xy` on `--context`.
    ProductTrace,
    /// Random proper trace on `--context`.
    ProperTrace,
    /// Random proper trace plus a random skew part.
    ProperSkewTrace,
    /// Identity linear map on `--context`.
    IdentityMap,
    NegTranspose,
    Conjugation,
    ConjugationShift,
    NegAntiautomorphism,
    NegAntiautomorphismShift,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Commuting,
    Centralizing,
}

impl ModeArg {
    fn mode(self) -> Mode {
        match self {
            ModeArg::Commuting => Mode::Commuting,
            ModeArg::Centralizing => Mode::Centralizing,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathArg {
    Generic,
    Constructive,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropertyArg {
    Commuting,
    Centralizing,
    CommutingTrace,
    CentralizingTrace,
    Jordan,
    LieTriple,
    KillsSecondCommutators,
    CentralValued,
}

/// A command's verdict with its message for stderr.
struct Exit {
    code: i32,
    message: String,
    /// Result document still written on failure.
    doc: Option<String>,
}

impl Exit {
    fn fail(message: impl Into<String>) -> Exit {
        Exit {
            code: EXIT_FAIL,
            message: message.into(),
            doc: None,
        }
    }

    fn input(message: impl Into<String>) -> Exit {
        Exit {
            code: EXIT_INPUT,
            message: message.into(),
            doc: None,
        }
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Exit {
        Exit::input(e.to_string())
    }
}

type Outcome = std::result::Result<Option<String>, Exit>;

/// Parses `args` (program name first) and runs the command; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let (doc, exit) = match execute(&cli) {
        Ok(doc) => (doc, None),
        Err(mut e) => (e.doc.take(), Some(e)),
    };
    if let Some(doc) = doc {
        match &cli.output {
            Some(path) => {
                if let Err(e) = std::fs::write(path, doc) {
                    let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                    return EXIT_INPUT;
                }
            }
            None => {
                let _ = write!(out, "{doc}");
            }
        }
    }
    match exit {
        None => EXIT_OK,
        Some(exit) => {
            let tag = if exit.code == EXIT_INPUT { "error" } else { "FAIL" };
            let _ = writeln!(err, "{tag}: {}", exit.message);
            exit.code
        }
    }
}

fn execute(cli: &Cli) -> Outcome {
    let ring_flag = cli.ring.as_deref().map(str::parse::<Ring>).transpose()?;
    let env = Env { cli, ring_flag };
    match &cli.command {
        Command::Gen(args) => env.gen(args),
        Command::Check { context } => env.check(context),
        Command::Center { context } => {
            let g = env.gma(context)?;
            Ok(Some(format::print(&CenterFile::new(g.center()))))
        }
        Command::DecomposeTrace {
            context,
            map,
            mode,
            path,
        } => env.decompose_trace(context, map, mode.mode(), *path),
        Command::DecomposeLti { source, target, map } => env.decompose_lti(source, target, map),
        Command::VerifyMap {
            context,
            map,
            property,
            target,
        } => env.verify_map(context, map, *property, target.as_deref()),
        Command::Suite { context, count } => env.suite(context, *count),
    }
}

struct Env<'a> {
    cli: &'a Cli,
    ring_flag: Option<Ring>,
}

fn read(path: &Path) -> Result<String, Exit> {
    std::fs::read_to_string(path).map_err(|e| Exit::input(format!("cannot read {}: {e}", path.display())))
}

fn witness_text(w: &PolyWitness) -> String {
    format!(
        "monomial {:?}, point x = {}, value {}",
        w.monomial,
        format_vec(&w.point),
        format_vec(&w.value)
    )
}

impl Env<'_> {
    fn gen_ring(&self) -> Ring {
        self.ring_flag.unwrap_or(Ring::PrimeField(5))
    }

    fn check_ring(&self, ring: Ring, what: &Path) -> Result<(), Exit> {
        match self.ring_flag {
            Some(r) if r != ring => Err(Exit::input(format!(
                "{} is over {ring} but --ring {r} was given",
                what.display()
            ))),
            _ => Ok(()),
        }
    }

    fn loyalty(&self) -> LoyaltyOptions {
        let mut l = LoyaltyOptions::default();
        if let Some(b) = self.cli.loyalty_bound {
            l.bound = b;
        }
        l
    }

    fn report_options(&self) -> ReportOptions {
        ReportOptions {
            loyalty: self.loyalty(),
            seed: self.cli.seed,
            ..ReportOptions::default()
        }
    }

    fn context(&self, path: &Path) -> Result<MoritaContext, Exit> {
        let ctx = format::parse_context(&read(path)?)
            .map_err(|e| Exit::input(format!("{}: {e}", path.display())))?;
        self.check_ring(ctx.ring, path)?;
        Ok(ctx)
    }

    /// A context that fails its axioms is malformed input for every command but `check`.
    fn gma(&self, path: &Path) -> Result<Gma, Exit> {
        Gma::assemble(self.context(path)?).map_err(|e| match e {
            AssemblyError::Input(e) => Exit::input(format!("{}: {e}", path.display())),
            AssemblyError::Axiom(v) => Exit::input(format!("{}: axiom violated: {v}", path.display())),
        })
    }

    fn map(&self, path: &Path) -> Result<MapData, Exit> {
        let m = format::parse_map(&read(path)?).map_err(|e| Exit::input(format!("{}: {e}", path.display())))?;
        self.check_ring(m.ring(), path)?;
        Ok(m)
    }

    fn linear(&self, path: &Path) -> Result<LinearMapRep, Exit> {
        Ok(self.map(path)?.into_linear()?)
    }

    fn bilinear(&self, path: &Path, d: usize) -> Result<BilinearMapRep, Exit> {
        let q = self.map(path)?.into_bilinear()?;
        q.check_shape(d)?;
        Ok(q)
    }

    fn gen(&self, a: &GenArgs) -> Outcome {
        let ring = self.gen_ring();
        let seed = self.cli.seed;
        let ctx_doc = |ctx: MoritaContext| Ok(Some(format::print_context(&ctx)));
        let map_doc = |map: MapData, generator: &str, seed: Option<u64>| {
            let prov = Provenance {
                generator: generator.to_string(),
                seed,
            };
            Ok(Some(format::print_map(&map, Some(prov))))
        };
        let axiom = |e: Error| match e {
            Error::Axiom(v) => Exit::fail(format!("axiom violated: {v}")),
            e => Exit::from(e),
        };
        match a.kind {
            GenKind::FullMatrix => ctx_doc(full_matrix(a.n, a.split, ring)?),
            GenKind::Triangular => ctx_doc(upper_triangular(a.n, a.split, ring)?),
            GenKind::Coordinatewise => ctx_doc(coordinatewise(ring)),
            GenKind::Inflated => {
                let gamma = match &a.gamma {
                    Some(text) => parse_matrix(text, ring)?,
                    None => Matrix::identity(ring, a.dimv),
                };
                ctx_doc(inflated(ring, a.dimv, &gamma).map_err(axiom)?)
            }
            GenKind::Peirce => {
                let alg = match &a.algebra {
                    Some(p) => {
                        let f: AlgebraFile = format::parse(&read(p)?)?;
                        let alg = f.to_algebra()?;
                        self.check_ring(alg.ring, p)?;
                        alg
                    }
                    None => matrix_algebra(ring, a.n),
                };
                let e = match &a.idempotent {
                    Some(text) => parse_vector(text, alg.ring)?,
                    None => return Err(Exit::input("--idempotent is required for the Peirce kind")),
                };
                let (ctx, _) = peirce(&alg, &e).map_err(axiom)?;
                ctx_doc(ctx)
            }
            GenKind::ProductTrace | GenKind::ProperTrace | GenKind::ProperSkewTrace | GenKind::IdentityMap => {
                let path = a
                    .context
                    .as_deref()
                    .ok_or_else(|| Exit::input("--context is required for this kind"))?;
                let g = self.gma(path)?;
                match a.kind {
                    GenKind::ProductTrace => map_doc(MapData::Bilinear(BilinearMapRep::product(&g)), "product", None),
                    GenKind::ProperTrace => {
                        map_doc(MapData::Bilinear(random_proper_trace(&g, seed)), "proper-trace", Some(seed))
                    }
                    GenKind::ProperSkewTrace => {
                        let q = random_proper_trace(&g, seed);
                        let mut rng = Rng::new(seed ^ 0x5ce3);
                        map_doc(MapData::Bilinear(add_random_skew(&q, &mut rng)), "proper-skew-trace", Some(seed))
                    }
                    _ => map_doc(MapData::Linear(LinearMapRep::identity(g.ring(), g.dim())), "identity", None),
                }
            }
            GenKind::NegTranspose => {
                let (l, _) = neg_transpose(&MatrixLayout::full(a.n, a.split), ring)?;
                map_doc(MapData::Linear(l), "neg-transpose", None)
            }
            GenKind::Conjugation
            | GenKind::ConjugationShift
            | GenKind::NegAntiautomorphism
            | GenKind::NegAntiautomorphismShift => {
                let (shape, name) = match a.kind {
                    GenKind::Conjugation => (LieShape::Conjugation, "conjugation"),
                    GenKind::ConjugationShift => (LieShape::ConjugationTraceShift(a.shift), "conjugation-shift"),
                    GenKind::NegAntiautomorphism => (LieShape::NegAntiautomorphism, "neg-antiautomorphism"),
                    _ => (
                        LieShape::NegAntiautomorphismTraceShift(a.shift),
                        "neg-antiautomorphism-shift",
                    ),
                };
                let (l, _) = random_lie_triple_iso(&MatrixLayout::full(a.n, a.split), ring, seed, shape)?;
                map_doc(MapData::Linear(l), name, Some(seed))
            }
        }
    }

    fn check(&self, path: &Path) -> Outcome {
        let ctx = self.context(path)?;
        let g = match Gma::assemble(ctx.clone()) {
            Ok(g) => g,
            Err(AssemblyError::Input(e)) => return Err(Exit::input(e.to_string())),
            Err(AssemblyError::Axiom(v)) => return Err(Exit::fail(format!("axiom violated: {v}"))),
        };
        let report = HypothesisReport::compute(&g, &self.report_options());
        Ok(Some(format::print(&ReportFile::new(&ctx, &report))))
    }

    fn decompose_trace(&self, ctx: &Path, map: &Path, mode: Mode, path: PathArg) -> Outcome {
        let g = self.gma(ctx)?;
        let t = TraceMap::from_bilinear(&self.bilinear(map, g.dim())?);
        let dec = Decomposer::new(&g, &self.report_options());
        let route = dec.route().map(|r| r.tag());
        let failure = |f: TraceFailure| match f {
            TraceFailure::PredicateFails { mode, witness } => {
                Exit::input(format!("trace is not {}: {}", mode.tag(), witness_text(&witness)))
            }
            f => Exit::fail(f.to_string()),
        };
        let verify = |d: &TraceDecomposition, checks: &mut Vec<CheckEntry>| {
            checks.push(CheckEntry::new("reconstructs_input", d.form.reconstruct(&g) == t, ""));
            let defect = d.form.centrality_defect(&g);
            checks.push(CheckEntry::new("parts_central", defect.is_none(), defect.unwrap_or_default()));
        };
        let mut checks = Vec::new();
        let (form, path_tag) = match path {
            PathArg::Generic => {
                let d = dec.generic(&t, mode).map_err(failure)?;
                verify(&d, &mut checks);
                (d.form, "generic")
            }
            PathArg::Constructive | PathArg::Both => {
                if mode == Mode::Commuting {
                    if let Verdict::Fails(w) = is_commuting_trace(&t, &g) {
                        return Err(Exit::input(format!("trace is not commuting: {}", witness_text(&w))));
                    }
                }
                let (w, d) = dec.constructive(&t).map_err(failure)?;
                checks.extend(w.checks.iter().map(CheckEntry::from));
                verify(&d, &mut checks);
                if path == PathArg::Both {
                    let gen = dec.generic(&t, mode).map_err(failure)?;
                    let agree = gen.form.reconstruct(&g) == d.form.reconstruct(&g);
                    checks.push(CheckEntry::new("paths_agree", agree, ""));
                    checks.push(CheckEntry::new("forms_identical", gen.form == d.form, ""));
                }
                (d.form, if path == PathArg::Both { "both" } else { "constructive" })
            }
        };
        let file = TraceFormFile::new(&form, mode.tag(), path_tag, route, checks);
        if let Some(c) = file.checks.iter().find(|c| !c.holds && c.name != "forms_identical") {
            return Err(Exit::fail(format!("check {} fails {}", c.name, c.detail)));
        }
        Ok(Some(format::print(&file)))
    }

    fn decompose_lti(&self, src: &Path, dst: &Path, map: &Path) -> Outcome {
        let g = self.gma(src)?;
        let g2 = self.gma(dst)?;
        let l = self.linear(map)?;
        match decompose_lie_triple_iso(&l, &g, &g2) {
            Ok(d) => Ok(Some(format::print(&LieFile::new(&d)))),
            Err(f) if f.is_input_error() => Err(Exit::input(f.to_string())),
            Err(f) => Err(Exit::fail(f.to_string())),
        }
    }

    fn verify_map(&self, ctx: &Path, map: &Path, property: PropertyArg, target: Option<&Path>) -> Outcome {
        let g = self.gma(ctx)?;
        let g2 = match target {
            Some(p) => Some(self.gma(p)?),
            None => None,
        };
        let g2 = g2.as_ref().unwrap_or(&g);
        let poly = |v: Verdict<PolyWitness>| v.witness().map(witness_text);
        let failure = match property {
            PropertyArg::Commuting | PropertyArg::Centralizing | PropertyArg::Jordan | PropertyArg::LieTriple => {
                let l = self.linear(map)?;
                match property {
                    PropertyArg::Commuting => {
                        l.check_shape(g.dim(), g.dim())?;
                        poly(is_commuting_linear(&l, &g))
                    }
                    PropertyArg::Centralizing => {
                        l.check_shape(g.dim(), g.dim())?;
                        poly(is_centralizing_linear(&l, &g))
                    }
                    PropertyArg::Jordan => {
                        l.check_shape(g.dim(), g2.dim())?;
                        is_jordan_hom(&l, &g, g2).witness().map(|i| format!("basis pair {i:?}"))
                    }
                    _ => {
                        l.check_shape(g.dim(), g2.dim())?;
                        is_lie_triple_hom(&l, &g, g2).witness().map(|i| format!("basis triple {i:?}"))
                    }
                }
            }
            PropertyArg::KillsSecondCommutators => {
                let l = self.linear(map)?;
                l.check_shape(g.dim(), g2.dim())?;
                vanishes_on_second_commutators(&l, &g)
                    .witness()
                    .map(|i| format!("basis triple {i:?}"))
            }
            PropertyArg::CentralValued => {
                let l = self.linear(map)?;
                l.check_shape(g.dim(), g2.dim())?;
                central_valued(&l, g2).witness().map(|i| format!("image of basis element {i}"))
            }
            PropertyArg::CommutingTrace | PropertyArg::CentralizingTrace => {
                let t = TraceMap::from_bilinear(&self.bilinear(map, g.dim())?);
                if property == PropertyArg::CommutingTrace {
                    poly(is_commuting_trace(&t, &g))
                } else {
                    poly(is_centralizing_trace(&t, &g))
                }
            }
        };
        let name = property.to_possible_value().expect("no skipped variants").get_name().to_string();
        match failure {
            None => Ok(Some(format!("PASS {name}\n"))),
            Some(w) => Err(Exit::fail(format!("{name} fails at {w}"))),
        }
    }

    fn suite(&self, ctx: &Path, count: usize) -> Outcome {
        let g = self.gma(ctx)?;
        let opts = SuiteOptions {
            seed: self.cli.seed,
            count,
            max_dim: self.cli.max_dim,
            loyalty: self.loyalty(),
        };
        let report = run_suite(&g, &opts);
        let text = report.render();
        if report.passed() {
            Ok(Some(text))
        } else {
            let failed: Vec<&str> = report
                .entries
                .iter()
                .filter(|e| e.status == crate::suite::Status::Fail)
                .map(|e| e.name)
                .collect();
            let mut exit = Exit::fail(format!("failing properties: {}", failed.join(", ")));
            exit.doc = Some(text);
            Err(exit)
        }
    }
}

fn parse_vector(text: &str, ring: Ring) -> Result<Vec<crate::ring::Scalar>, Error> {
    text.split(',').map(|s| ring.parse_scalar(s)).collect()
}

fn parse_matrix(text: &str, ring: Ring) -> Result<Matrix, Error> {
    let rows: Vec<Vec<_>> = text.split(';').map(|r| parse_vector(r, ring)).collect::<Result<_, _>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Shape(format!("ragged matrix literal {text:?}")));
    }
    Ok(Matrix::from_rows(ring, cols, rows))
}

/// Entry point of the binary.
pub fn main() -> i32 {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run(std::env::args_os(), &mut out, &mut err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("gmalg").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn matrix_literals() {
        let q = Ring::Rational;
        let m = parse_matrix("1,1/2;1/2,0", q).unwrap();
        assert_eq!(m.get(0, 1), &q.from_ratio(1, 2));
        assert!(parse_matrix("1,2;3", q).is_err());
    }

    #[test]
    fn unknown_flag_is_an_input_error() {
        let (code, _, err) = run_args(&["check", "--bogus"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("--bogus"));
    }

    #[test]
    fn gen_prints_a_parsable_context() {
        let (code, out, _) = run_args(&["gen", "--kind", "triangular", "--n", "3", "--ring", "q"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(format::parse_context(&out).unwrap(), upper_triangular(3, 1, Ring::Rational).unwrap());
    }

    #[test]
    fn inflated_with_nonzero_form_reports_the_axiom() {
        let (code, _, err) = run_args(&["gen", "--kind", "inflated", "--dimv", "2", "--ring", "q"]);
        assert_eq!(code, EXIT_FAIL);
        assert!(err.contains("axiom violated"), "{err}");
    }
}
