//! Proper forms of centralizing traces (a generic linear solve and a
//! constructive path through block components) and the splitting of Lie
//! triple isomorphisms into a signed Jordan part plus a central part.

mod components;
mod constructive;
mod generate;
mod generic;
mod lie;

pub use components::{block_label, ComponentGrid, BLOCK_LETTERS};
pub use constructive::{ConstructiveWitness, ShapeCheck};
pub use generate::{
    add_random_skew, neg_transpose, random_lie_triple_iso, random_proper_trace, LieGroundTruth, LieShape,
};
pub use generic::{solve_proper_form, solve_proper_form_fixed_z};
pub use lie::{decompose_lie_triple_iso, LieChecks, LieFailure, LieTripleDecomposition};

use crate::algebra::Gma;
use crate::center::{HypothesisReport, ReportOptions, Route};
use crate::polymap::{is_centralizing_trace, is_commuting_trace, LinearMapRep, Mode, PolyWitness, TraceMap};
use crate::ring::{axpy, vec_add, vec_scale, Scalar};

/// `T(x) = z x² + μ(x) x + ν(x)` with `z` central and `μ`, `ν` central-valued.
///
/// `z` is in G coordinates, `μ` is a linear map G → G and `ν` a quadratic map
/// G → G stored by its symmetric tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperTraceForm {
    pub z: Vec<Scalar>,
    pub mu: LinearMapRep,
    pub nu: TraceMap,
}

impl ProperTraceForm {
    /// The symmetric tensor of `x ↦ z x² + μ(x) x + ν(x)`.
    pub fn reconstruct(&self, g: &Gma) -> TraceMap {
        let ring = g.ring();
        let d = g.dim();
        let half = ring.half();
        let zb: Vec<Vec<Scalar>> = (0..d).map(|i| g.mul(&self.z, &g.basis(i))).collect();
        let mu: Vec<Vec<Scalar>> = (0..d).map(|i| self.mu.image_of_basis(i)).collect();
        let mut s = Vec::with_capacity(crate::polymap::pair_count(d));
        for (a, b) in crate::polymap::pairs(d) {
            // ½ z (e_a e_b + e_b e_a) + ½ (μ(e_a) e_b + μ(e_b) e_a) + ν(e_a, e_b)
            let mut v = vec_add(&g.mul(&zb[a], &g.basis(b)), &g.mul(&zb[b], &g.basis(a)));
            v = vec_add(&v, &g.mul(&mu[a], &g.basis(b)));
            v = vec_add(&v, &g.mul(&mu[b], &g.basis(a)));
            let mut v = vec_scale(&half, &v);
            axpy(&mut v, &ring.one(), self.nu.sym(a, b));
            s.push(v);
        }
        TraceMap::from_symmetric(ring, d, d, s)
    }

    /// First violation of "z central, μ and ν central-valued", if any.
    pub fn centrality_defect(&self, g: &Gma) -> Option<String> {
        if !g.is_central(&self.z) {
            return Some("z is not central".into());
        }
        for i in 0..g.dim() {
            if !g.is_central(&self.mu.image_of_basis(i)) {
                return Some(format!("mu(e_{i}) is not central"));
            }
        }
        for (p, v) in self.nu.symmetric_values().iter().enumerate() {
            if !g.is_central(v) {
                return Some(format!("nu value at pair {p} is not central"));
            }
        }
        None
    }

    /// `q(x, y) = ½z(xy + yx) + ½(μ(x)y + μ(y)x) + ν(x, y)`.
    pub fn to_bilinear(&self, g: &Gma) -> crate::polymap::BilinearMapRep {
        self.reconstruct(g).to_bilinear()
    }
}

/// A verified proper form and the hypothesis route that licensed the run.
#[derive(Clone, Debug)]
pub struct TraceDecomposition {
    pub form: ProperTraceForm,
    pub route: Option<Route>,
}

/// Why a trace could not be put in proper form.
#[derive(Clone, Debug)]
pub enum TraceFailure {
    /// The trace fails the predicate the mode requires.
    PredicateFails { mode: Mode, witness: PolyWitness },
    /// The linear system for `(z, μ, ν)` is inconsistent.
    NotProper { route: Option<Route> },
    /// A constructive step had no solution (e.g. φ unavailable, a value outside π_A).
    ConstructionFailed { route: Option<Route>, reason: String },
    /// The construction finished but its output breaks an invariant the
    /// hypotheses promise; kept for inspection, never accepted.
    ViolationCandidate { route: Option<Route>, reason: String },
}

impl std::fmt::Display for TraceFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let route = |r: &Option<Route>| r.map_or("none", |r| r.tag());
        match self {
            TraceFailure::PredicateFails { mode, witness } => {
                write!(f, "trace is not {} (monomial {:?})", mode.tag(), witness.monomial)
            }
            TraceFailure::NotProper { route: r } => write!(f, "trace is not proper (route {})", route(r)),
            TraceFailure::ConstructionFailed { route: r, reason } => {
                write!(f, "construction failed (route {}): {reason}", route(r))
            }
            TraceFailure::ViolationCandidate { route: r, reason } => {
                write!(f, "violation candidate (route {}): {reason}", route(r))
            }
        }
    }
}

/// Decomposition entry points for one algebra with its hypothesis report cached.
pub struct Decomposer<'g> {
    g: &'g Gma,
    report: HypothesisReport,
}

impl<'g> Decomposer<'g> {
    pub fn new(g: &'g Gma, opts: &ReportOptions) -> Decomposer<'g> {
        Decomposer {
            g,
            report: HypothesisReport::compute(g, opts),
        }
    }

    pub fn with_report(g: &'g Gma, report: HypothesisReport) -> Decomposer<'g> {
        Decomposer { g, report }
    }

    pub fn gma(&self) -> &'g Gma {
        self.g
    }

    pub fn report(&self) -> &HypothesisReport {
        &self.report
    }

    pub fn route(&self) -> Option<Route> {
        self.report.route()
    }

    fn require(&self, t: &TraceMap, mode: Mode) -> Result<(), TraceFailure> {
        let verdict = match mode {
            Mode::Commuting => is_commuting_trace(t, self.g),
            Mode::Centralizing => is_centralizing_trace(t, self.g),
        };
        match verdict.witness() {
            Some(w) => Err(TraceFailure::PredicateFails {
                mode,
                witness: w.clone(),
            }),
            None => Ok(()),
        }
    }

    /// Linear solve for `(z, μ, ν)`, canonical solution, reconstruction verified.
    pub fn generic(&self, t: &TraceMap, mode: Mode) -> Result<TraceDecomposition, TraceFailure> {
        self.require(t, mode)?;
        let route = self.route();
        let form = solve_proper_form(self.g, t).ok_or(TraceFailure::NotProper { route })?;
        Ok(TraceDecomposition { form, route })
    }

    /// The block-component construction; needs φ.
    pub fn constructive(&self, t: &TraceMap) -> Result<(ConstructiveWitness, TraceDecomposition), TraceFailure> {
        self.require(t, Mode::Centralizing)?;
        let route = self.route();
        let grid = ComponentGrid::new(self.g, t);
        let witness = ConstructiveWitness::extract(self.g, &grid)
            .map_err(|reason| TraceFailure::ConstructionFailed { route, reason })?;
        let form = witness
            .proper_form(self.g, t)
            .map_err(|reason| TraceFailure::ViolationCandidate { route, reason })?;
        Ok((witness, TraceDecomposition { form, route }))
    }
}
