use super::solve_proper_form_fixed_z;
use crate::algebra::Gma;
use crate::polymap::{
    central_valued, is_centralizing_trace, is_jordan_hom, is_lie_triple_hom, pairs,
    vanishes_on_second_commutators, LinearMapRep, PolyWitness, TraceMap,
};
use crate::ring::{vec_scale, Scalar};

/// Verdicts on the parts of a splitting `l = λ m + n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieChecks {
    pub jordan: bool,
    pub injective: bool,
    pub n_central: bool,
    pub n_kills_second_commutators: bool,
    /// `m(1) = 1′`, checked only when the target is central over the ring.
    pub unit_preserved: Option<bool>,
    /// Checked only when the target is central over the ring.
    pub surjective: Option<bool>,
}

impl LieChecks {
    pub fn all_hold(&self) -> bool {
        self.jordan
            && self.injective
            && self.n_central
            && self.n_kills_second_commutators
            && self.unit_preserved != Some(false)
            && self.surjective != Some(false)
    }
}

/// `l = λ m + n` with `m` Jordan and `n` central-valued, killing second commutators.
///
/// `mu1` and `nu1` live on the target: `l(l⁻¹(y)²) = λ y² + μ₁(y) y + ν₁(y)`,
/// and `m = λ l + ½ μ₁ ∘ l`.
#[derive(Clone, Debug)]
pub struct LieTripleDecomposition {
    pub lambda: i8,
    pub m: LinearMapRep,
    pub n: LinearMapRep,
    pub mu1: LinearMapRep,
    pub nu1: TraceMap,
    pub checks: LieChecks,
}

#[derive(Clone, Debug)]
pub enum LieFailure {
    Shape(String),
    NotInvertible,
    NotLieTriple([usize; 3]),
    /// `y ↦ l(l⁻¹(y)²)` is not centralizing on the target.
    NotCentralizing(PolyWitness),
    /// No sign gives a consistent system with a Jordan `m`; lists the signs
    /// whose system was consistent.
    NoSign { consistent: Vec<i8> },
    /// Both signs work, which the uniqueness argument rules out on instances
    /// meeting the hypotheses.
    Ambiguous(Vec<LieTripleDecomposition>),
    /// A sign was found but a property of `m` or `n` fails.
    ChecksFailed(Box<LieTripleDecomposition>),
}

impl LieFailure {
    /// Malformed inputs as opposed to a decomposition that does not exist.
    pub fn is_input_error(&self) -> bool {
        matches!(self, LieFailure::Shape(_) | LieFailure::NotInvertible | LieFailure::NotLieTriple(_))
    }
}

impl std::fmt::Display for LieFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LieFailure::Shape(s) => write!(f, "shape mismatch: {s}"),
            LieFailure::NotInvertible => write!(f, "map is not bijective"),
            LieFailure::NotLieTriple(t) => write!(f, "map is not a Lie triple homomorphism (basis triple {t:?})"),
            LieFailure::NotCentralizing(w) => {
                write!(f, "l(l^-1(y)^2) is not centralizing (monomial {:?})", w.monomial)
            }
            LieFailure::NoSign { consistent } => {
                write!(f, "no sign yields a Jordan part (consistent signs: {consistent:?})")
            }
            LieFailure::Ambiguous(_) => write!(f, "violation candidate: both signs yield a Jordan part"),
            LieFailure::ChecksFailed(d) => write!(f, "decomposition checks failed: {:?}", d.checks),
        }
    }
}

fn sign(ring: crate::ring::Ring, lambda: i8) -> Scalar {
    ring.from_i64(lambda as i64)
}

/// Splits a Lie triple isomorphism `l: G → G′`.
///
/// Both signs are tried: for each, `l(l⁻¹(y)²) − λ y²` is solved as
/// `μ₁(y) y + ν₁(y)` with central values, and `m = λ l + ½ μ₁ ∘ l` must be
/// Jordan. Exactly one sign is expected to survive.
pub fn decompose_lie_triple_iso(l: &LinearMapRep, g: &Gma, g2: &Gma) -> Result<LieTripleDecomposition, LieFailure> {
    let ring = g.ring();
    if g2.ring() != ring || l.ring() != ring {
        return Err(LieFailure::Shape("rings differ".into()));
    }
    if l.src_dim() != g.dim() || l.dst_dim() != g2.dim() {
        return Err(LieFailure::Shape(format!(
            "map is {}x{}, algebras have dimensions {} and {}",
            l.dst_dim(),
            l.src_dim(),
            g.dim(),
            g2.dim()
        )));
    }
    let linv = l.matrix.inverse().ok_or(LieFailure::NotInvertible)?;
    if let Some(t) = is_lie_triple_hom(l, g, g2).witness() {
        return Err(LieFailure::NotLieTriple(*t));
    }
    let d2 = g2.dim();
    let half = ring.half();
    let pre: Vec<Vec<Scalar>> = linv.columns();
    let s = pairs(d2)
        .into_iter()
        .map(|(i, j)| l.apply(&vec_scale(&half, &g.jordan(&pre[i], &pre[j]))))
        .collect();
    let t = TraceMap::from_symmetric(ring, d2, d2, s);
    if let Some(w) = is_centralizing_trace(&t, g2).witness() {
        return Err(LieFailure::NotCentralizing(w.clone()));
    }

    let c2 = g2.center();
    let central_target = c2.dim() == 1 && c2.contains(g2.unit());
    let mut consistent = Vec::new();
    let mut found = Vec::new();
    for lambda in [1i8, -1] {
        let lam = sign(ring, lambda);
        let z = vec_scale(&lam, g2.unit());
        let Some(form) = solve_proper_form_fixed_z(g2, &t, &z) else {
            continue;
        };
        consistent.push(lambda);
        let mu_l = form.mu.compose(l);
        let m = LinearMapRep::new(l.matrix.scale(&lam).add(&mu_l.matrix.scale(&half)));
        if !is_jordan_hom(&m, g, g2).holds() {
            continue;
        }
        let n = LinearMapRep::new(l.matrix.sub(&m.matrix.scale(&lam)));
        let rank = m.matrix.rank();
        let checks = LieChecks {
            jordan: true,
            injective: rank == g.dim(),
            n_central: central_valued(&n, g2).holds(),
            n_kills_second_commutators: vanishes_on_second_commutators(&n, g).holds(),
            unit_preserved: central_target.then(|| m.apply(g.unit()) == g2.unit()),
            surjective: central_target.then_some(rank == d2),
        };
        found.push(LieTripleDecomposition {
            lambda,
            m,
            n,
            mu1: form.mu,
            nu1: form.nu,
            checks,
        });
    }
    match found.len() {
        0 => Err(LieFailure::NoSign { consistent }),
        1 => {
            let d = found.pop().unwrap();
            if d.checks.all_hold() {
                Ok(d)
            } else {
                Err(LieFailure::ChecksFailed(Box::new(d)))
            }
        }
        _ => Err(LieFailure::Ambiguous(found)),
    }
}
