//! Batch runner over the structural properties of one algebra. Entries are
//! sorted by name and carry their seeds, so identical inputs give identical
//! reports.

use crate::algebra::Gma;
use crate::center::{
    center_has_no_zero_divisors, central_jordan_radical, check_commutator_square_identity, pairing_annihilator_nullity,
    projection_cancellation, square_annihilator_containment, GridOutcome, HypothesisReport, LoyaltyOptions,
    ReportOptions, Side,
};
use crate::decompose::{add_random_skew, ComponentGrid, Decomposer, ProperTraceForm};
use crate::polymap::{
    is_commuting_trace, trace_defect, trace_space, LinearMapRep, Mode, TraceMap, DEFAULT_MAX_DIM,
};
use crate::ring::{axpy, Scalar};
use crate::rng::Rng;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub count: usize,
    pub max_dim: usize,
    pub loyalty: LoyaltyOptions,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            count: 20,
            max_dim: DEFAULT_MAX_DIM,
            loyalty: LoyaltyOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn tag(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteEntry {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub header: String,
    pub entries: Vec<SuiteEntry>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn entry(&self, name: &str) -> Option<&SuiteEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.header);
        for e in &self.entries {
            out.push_str(&format!("{} {} {}\n", e.status.tag(), e.name, e.detail));
        }
        let fails = self.entries.iter().filter(|e| e.status == Status::Fail).count();
        let skips = self.entries.iter().filter(|e| e.status == Status::Skip).count();
        out.push_str(&format!(
            "summary passed={} failed={fails} skipped={skips}\n",
            self.entries.len() - fails - skips
        ));
        out
    }
}

type Outcome = (Status, String);

fn pass(detail: impl Into<String>) -> Outcome {
    (Status::Pass, detail.into())
}

fn fail(detail: impl Into<String>) -> Outcome {
    (Status::Fail, detail.into())
}

fn skip(detail: impl Into<String>) -> Outcome {
    (Status::Skip, detail.into())
}

fn grid(outcome: GridOutcome) -> Outcome {
    match outcome {
        GridOutcome::Holds => pass("exhaustive scan"),
        GridOutcome::Counterexample(v) => fail(format!("counterexample {v:?}")),
        GridOutcome::Skipped(r) => skip(r),
    }
}

struct Ctx<'a> {
    g: &'a Gma,
    opts: &'a SuiteOptions,
    dec: Decomposer<'a>,
}

impl Ctx<'_> {
    fn report(&self) -> &HypothesisReport {
        self.dec.report()
    }

    fn loyal_gate(&self) -> Option<Outcome> {
        if self.report().loyal.is_loyal() {
            None
        } else {
            Some(skip(format!("needs a loyal bimodule; loyalty is {}", self.report().loyal)))
        }
    }

    fn route_gate(&self) -> Option<Outcome> {
        match self.dec.route() {
            Some(_) => None,
            None => Some(skip("no hypothesis route applies")),
        }
    }

    fn route_tag(&self) -> &'static str {
        self.dec.route().map_or("none", |r| r.tag())
    }

    fn seeds(&self, salt: u64) -> Vec<u64> {
        let mut rng = Rng::new(self.opts.seed ^ salt);
        (0..self.opts.count).map(|_| rng.next_u64()).collect()
    }
}

fn associative_unital(c: &Ctx) -> Outcome {
    match c.g.as_algebra().check_laws("G") {
        Ok(()) => pass(format!("dim {}", c.g.dim())),
        Err(v) => fail(v.to_string()),
    }
}

fn raw_centrality(c: &Ctx) -> Outcome {
    let g = c.g;
    let z = g.center();
    for (t, v) in z.basis().iter().enumerate() {
        for i in 0..g.dim() {
            if !crate::ring::is_zero_vec(&g.commutator(v, &g.basis(i))) {
                return fail(format!("basis vector {t} fails to commute with e_{i}"));
            }
        }
    }
    let raw = g.as_algebra().center();
    if !raw.same_as(&z.z_g) {
        return fail(format!("diagonal system gives dim {}, raw center dim {}", z.dim(), raw.dim()));
    }
    pass(format!("dim Z(G) = {}", z.dim()))
}

fn phi_intertwines(c: &Ctx) -> Outcome {
    let ctx = c.g.context();
    let z = c.g.center();
    let Some(phi) = z.phi() else {
        return skip(format!("phi unavailable: {}", z.phi.as_ref().unwrap_err()));
    };
    let ring = ctx.ring;
    let [_, dm, dn, _] = ctx.dims();
    for a in z.pi_a.basis() {
        let b = phi.apply(a).expect("basis of pi_A");
        for j in 0..dm {
            let m = ring.unit_vector(dm, j);
            if ctx.m.act_left(a, &m) != ctx.m.act_right(&m, &b) {
                return fail(format!("a m != m phi(a) at m = e_{j}"));
            }
        }
        for k in 0..dn {
            let n = ring.unit_vector(dn, k);
            if ctx.n.act_right(&n, a) != ctx.n.act_left(&b, &n) {
                return fail(format!("n a != phi(a) n at n = e_{k}"));
            }
        }
    }
    pass(format!("dim pi_A = {}", z.pi_a.dim()))
}

fn jordan_radical(c: &Ctx) -> Outcome {
    let r = central_jordan_radical(c.g);
    if r.dim() == 0 {
        pass("fixpoint is zero")
    } else {
        fail(format!("radical of dim {}", r.dim()))
    }
}

fn identity_dichotomy(c: &Ctx) -> Outcome {
    let ctx = c.g.context();
    let commutative = ctx.a.is_commutative() && ctx.b.is_commutative();
    let verdict = check_commutator_square_identity(c.g);
    match (verdict.witness(), commutative) {
        (None, true) => pass("identity holds; both corners commutative"),
        (Some(w), false) => {
            let direct = c.g.commutator(&c.g.commutator(&c.g.square(&w.x), &w.y), &c.g.commutator(&w.x, &w.y));
            if direct == w.value && !crate::ring::is_zero_vec(&direct) {
                pass(format!("identity fails at x-monomial {:?}, y-monomial {:?}", w.x_monomial, w.y_monomial))
            } else {
                fail("witness does not re-evaluate to a nonzero value")
            }
        }
        (None, false) => fail("identity holds but a corner is noncommutative"),
        (Some(_), true) => fail("identity fails although both corners are commutative"),
    }
}

fn projection_cancel(c: &Ctx) -> Outcome {
    c.loyal_gate()
        .unwrap_or_else(|| grid(projection_cancellation(c.g, c.opts.loyalty.bound)))
}

fn no_zero_divisors(c: &Ctx) -> Outcome {
    c.loyal_gate()
        .unwrap_or_else(|| grid(center_has_no_zero_divisors(c.g, c.opts.loyalty.bound)))
}

fn pairing_annihilator(c: &Ctx) -> Outcome {
    if let Some(o) = c.loyal_gate() {
        return o;
    }
    if !c.report().b_noncommutative {
        return skip("needs B noncommutative");
    }
    match pairing_annihilator_nullity(c.g.context()) {
        0 => pass("only the zero pair"),
        k => fail(format!("solution space of dim {k}")),
    }
}

fn square_annihilator(c: &Ctx) -> Outcome {
    if let Some(o) = c.loyal_gate() {
        return o;
    }
    let ctx = c.g.context();
    match (
        square_annihilator_containment(ctx, Side::BOnN),
        square_annihilator_containment(ctx, Side::AOnM),
    ) {
        (true, true) => pass("both sides"),
        (b, a) => fail(format!("B on N: {b}, A on M: {a}")),
    }
}

fn roundtrip(c: &Ctx) -> Outcome {
    let seeds = c.seeds(0x524f);
    for &s in &seeds {
        let form = ProperTraceForm::random(c.g, &mut Rng::new(s));
        let t = form.reconstruct(c.g);
        match c.dec.generic(&t, Mode::Commuting) {
            Ok(d) if d.form.reconstruct(c.g) == t => {}
            Ok(_) => return fail(format!("seed {s}: reconstruction differs")),
            Err(e) => return fail(format!("seed {s}: {e}")),
        }
    }
    pass(format!("{} seeds from {}", seeds.len(), c.opts.seed))
}

fn paths_agree(c: &Ctx) -> Outcome {
    if let Some(o) = c.route_gate() {
        return o;
    }
    let seeds = c.seeds(0x5041);
    for &s in &seeds {
        let t = ProperTraceForm::random(c.g, &mut Rng::new(s)).reconstruct(c.g);
        let generic = match c.dec.generic(&t, Mode::Centralizing) {
            Ok(d) => d.form.reconstruct(c.g),
            Err(e) => return fail(format!("seed {s}: generic path: {e}")),
        };
        let constructive = match c.dec.constructive(&t) {
            Ok((_, d)) => d.form.reconstruct(c.g),
            Err(e) => return fail(format!("seed {s}: constructive path: {e}")),
        };
        if generic != t || constructive != t {
            return fail(format!("seed {s}: reconstructions disagree"));
        }
    }
    pass(format!("{} seeds, route {}", seeds.len(), c.route_tag()))
}

fn component_shapes(c: &Ctx) -> Outcome {
    if let Some(o) = c.route_gate() {
        return o;
    }
    let seeds = c.seeds(0x4353);
    for &s in &seeds {
        let mut rng = Rng::new(s);
        let form = ProperTraceForm::random(c.g, &mut rng);
        let q = add_random_skew(&form.to_bilinear(c.g), &mut rng);
        let t = TraceMap::from_bilinear(&q);
        let grid = ComponentGrid::new(c.g, &t);
        let vanish = grid.vanishing_violations();
        if !vanish.is_empty() {
            return fail(format!("seed {s}: nonzero components {vanish:?}"));
        }
        for block in [1, 2] {
            if !grid.diagonal_centrality_violations(c.g, block).is_empty() {
                return fail(format!("seed {s}: diagonal part of block {} not central", block + 1));
            }
        }
        match c.dec.constructive(&t) {
            Ok((w, _)) => {
                if let Some(ch) = w.failed_checks().first() {
                    return fail(format!("seed {s}: {} fails at {}", ch.name, ch.detail));
                }
            }
            Err(e) => return fail(format!("seed {s}: {e}")),
        }
    }
    pass(format!("{} seeds, route {}", seeds.len(), c.route_tag()))
}

fn space_gate(c: &Ctx) -> Option<Outcome> {
    if let Some(o) = c.route_gate() {
        return Some(o);
    }
    if c.g.dim() > c.opts.max_dim {
        return Some(skip(format!("dim {} exceeds max-dim {}", c.g.dim(), c.opts.max_dim)));
    }
    None
}

fn space_decomposes(c: &Ctx) -> Outcome {
    if let Some(o) = space_gate(c) {
        return o;
    }
    let space = match trace_space(c.g, Mode::Centralizing, c.opts.max_dim) {
        Ok(s) => s,
        Err(e) => return fail(e.to_string()),
    };
    for (i, t) in space.basis_traces().iter().enumerate() {
        if let Err(e) = c.dec.generic(t, Mode::Centralizing) {
            return fail(format!("basis element {i}: {e}"));
        }
    }
    let (r, k) = space.constraint_shape;
    pass(format!("nullity {} of a {r}x{k} system", space.subspace.dim()))
}

fn centralizing_equals_commuting(c: &Ctx) -> Outcome {
    if let Some(o) = space_gate(c) {
        return o;
    }
    let cen = trace_space(c.g, Mode::Centralizing, c.opts.max_dim);
    let com = trace_space(c.g, Mode::Commuting, c.opts.max_dim);
    match (cen, com) {
        (Ok(a), Ok(b)) if a.subspace.same_as(&b.subspace) => pass(format!("both of dim {}", a.subspace.dim())),
        (Ok(a), Ok(b)) => fail(format!("dims {} and {}", a.subspace.dim(), b.subspace.dim())),
        (Err(e), _) | (_, Err(e)) => fail(e.to_string()),
    }
}

fn polarization(c: &Ctx) -> Outcome {
    let g = c.g;
    let ring = g.ring();
    let d = g.dim();
    let mut rng = Rng::new(c.opts.seed ^ 0x504f);
    let s = (0..crate::polymap::pair_count(d)).map(|_| rng.vector(ring, d)).collect();
    let t = TraceMap::from_symmetric(ring, d, d, s);
    let coeffs = trace_defect(&t, g, Mode::Commuting, false);
    for n in 0..c.opts.count {
        let x = rng.vector(ring, d);
        let mut expanded = g.zero();
        for ([i, j, k], v) in &coeffs {
            let mono: Scalar = &(&x[*i] * &x[*j]) * &x[*k];
            axpy(&mut expanded, &mono, v);
        }
        if expanded != crate::polymap::defect_value(g, &t, &x) {
            return fail(format!("point {n}: expansion differs from direct evaluation"));
        }
    }
    pass(format!("{} points, {} nonzero monomials", c.opts.count, coeffs.len()))
}

fn commuting_sample(c: &Ctx) -> Outcome {
    let seeds = c.seeds(0x434d);
    for &s in &seeds {
        let t = ProperTraceForm::random(c.g, &mut Rng::new(s)).reconstruct(c.g);
        if !is_commuting_trace(&t, c.g).holds() {
            return fail(format!("seed {s}: proper trace is not commuting"));
        }
    }
    pass(format!("{} seeds", seeds.len()))
}

fn identity_splits(c: &Ctx) -> Outcome {
    if !c.report().some_corner_noncommutative() {
        return skip("needs a noncommutative corner");
    }
    let id = LinearMapRep::identity(c.g.ring(), c.g.dim());
    match crate::decompose::decompose_lie_triple_iso(&id, c.g, c.g) {
        Ok(d) if d.lambda == 1 && d.m == id && d.n.matrix.is_zero() => pass("lambda = +1, n = 0"),
        Ok(d) => fail(format!("lambda = {}, unexpected parts", d.lambda)),
        Err(e) => fail(e.to_string()),
    }
}

type Property = (&'static str, fn(&Ctx) -> Outcome);

const PROPERTIES: [Property; 17] = [
    ("algebra.associative_unital", associative_unital),
    ("center.jordan_radical_zero", jordan_radical),
    ("center.no_zero_divisors", no_zero_divisors),
    ("center.pairing_annihilator_trivial", pairing_annihilator),
    ("center.phi_intertwines", phi_intertwines),
    ("center.projection_cancellation", projection_cancel),
    ("center.raw_centrality", raw_centrality),
    ("center.square_annihilator_containment", square_annihilator),
    ("identity.commutator_square_dichotomy", identity_dichotomy),
    ("lie.identity_splits", identity_splits),
    ("polymap.polarization_soundness", polarization),
    ("trace.centralizing_equals_commuting", centralizing_equals_commuting),
    ("trace.component_shapes", component_shapes),
    ("trace.paths_agree", paths_agree),
    ("trace.proper_forms_commute", commuting_sample),
    ("trace.roundtrip", roundtrip),
    ("trace.space_decomposes", space_decomposes),
];

pub fn run_suite(g: &Gma, opts: &SuiteOptions) -> SuiteReport {
    let report_opts = ReportOptions {
        loyalty: opts.loyalty.clone(),
        seed: opts.seed,
        ..ReportOptions::default()
    };
    let c = Ctx {
        g,
        opts,
        dec: Decomposer::new(g, &report_opts),
    };
    let mut entries: Vec<SuiteEntry> = PROPERTIES
        .iter()
        .map(|(name, f)| {
            let (status, detail) = f(&c);
            SuiteEntry { name, status, detail }
        })
        .collect();
    entries.sort_by(|a, b| a.name.cmp(b.name));
    let header = format!(
        "suite ring={} dims={:?} seed={} count={} route={}",
        g.ring(),
        g.block_dims(),
        opts.seed,
        opts.count,
        c.route_tag()
    );
    SuiteReport { header, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builders::{coordinatewise, upper_triangular};
    use crate::ring::Ring;

    fn quick() -> SuiteOptions {
        SuiteOptions {
            count: 3,
            ..SuiteOptions::default()
        }
    }

    #[test]
    fn t2_suite_passes_with_identity_holding() {
        let g = Gma::assemble(upper_triangular(2, 1, Ring::PrimeField(5)).unwrap()).unwrap();
        let r = run_suite(&g, &quick());
        assert!(r.passed(), "{}", r.render());
        let e = r.entry("identity.commutator_square_dichotomy").unwrap();
        assert_eq!(e.status, Status::Pass);
        assert!(e.detail.contains("holds"));
    }

    #[test]
    fn non_loyal_context_skips_loyalty_properties() {
        let g = Gma::assemble(coordinatewise(Ring::PrimeField(5))).unwrap();
        let r = run_suite(&g, &quick());
        assert!(r.passed(), "{}", r.render());
        for name in ["center.no_zero_divisors", "center.projection_cancellation"] {
            assert_eq!(r.entry(name).unwrap().status, Status::Skip);
        }
    }
}
