use super::ProperTraceForm;
use crate::algebra::{Gma, MatrixLayout, Tensor3};
use crate::error::{Error, Result};
use crate::polymap::{pair_count, BilinearMapRep, LinearMapRep, TraceMap};
use crate::ring::{axpy, Matrix, Ring, Scalar};
use crate::rng::Rng;

impl ProperTraceForm {
    /// Draws `z ∈ Z(G)`, then `μ(e_i)` for each basis element, then `ν` on each
    /// pair `i ≤ j`, every value as random coordinates along the basis of Z(G).
    pub fn random(g: &Gma, rng: &mut Rng) -> ProperTraceForm {
        let ring = g.ring();
        let d = g.dim();
        let basis = g.center().basis();
        let mut draw = || {
            let mut v = g.zero();
            for z in basis {
                axpy(&mut v, &rng.scalar(ring), z);
            }
            v
        };
        let z = draw();
        let mu_cols: Vec<Vec<Scalar>> = (0..d).map(|_| draw()).collect();
        let nu = (0..pair_count(d)).map(|_| draw()).collect();
        ProperTraceForm {
            z,
            mu: LinearMapRep::new(Matrix::from_columns(ring, d, &mu_cols)),
            nu: TraceMap::from_symmetric(ring, d, d, nu),
        }
    }
}

/// `q(x, y) = ½z(xy + yx) + ½(μ(x)y + μ(y)x) + ν(x, y)` for a form drawn from `seed`.
pub fn random_proper_trace(g: &Gma, seed: u64) -> BilinearMapRep {
    ProperTraceForm::random(g, &mut Rng::new(seed)).to_bilinear(g)
}

/// Adds `r(x, y)` with `r(y, x) = −r(x, y)`; the trace is unchanged.
pub fn add_random_skew(q: &BilinearMapRep, rng: &mut Rng) -> BilinearMapRep {
    let (d, _, dst) = q.tensor.shape();
    let ring = q.tensor.ring();
    let mut t: Tensor3 = q.tensor.clone();
    for i in 0..d {
        for j in i + 1..d {
            for k in 0..dst {
                let v = rng.scalar(ring);
                if !v.is_zero() {
                    t.add(i, j, k, &v);
                    t.add(j, i, k, &-v);
                }
            }
        }
    }
    BilinearMapRep::new(t)
}

/// Shapes of generated Lie triple isomorphisms of a full matrix algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieShape {
    /// `x ↦ u x u⁻¹`.
    Conjugation,
    /// `x ↦ u x u⁻¹ + c·tr(x)·1`.
    ConjugationTraceShift(i64),
    /// `x ↦ −u xᵀ u⁻¹`.
    NegAntiautomorphism,
    /// `x ↦ −u xᵀ u⁻¹ + c·tr(x)·1`.
    NegAntiautomorphismTraceShift(i64),
}

/// The splitting a generated map was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieGroundTruth {
    pub lambda: i8,
    pub m: LinearMapRep,
    pub n: LinearMapRep,
}

impl LieGroundTruth {
    pub fn map(&self) -> LinearMapRep {
        let ring = self.m.ring();
        let lam = ring.from_i64(self.lambda as i64);
        LinearMapRep::new(self.m.matrix.scale(&lam).add(&self.n.matrix))
    }
}

const MAX_DRAWS: usize = 64;

fn random_invertible(ring: Ring, n: usize, rng: &mut Rng) -> Result<Matrix> {
    for _ in 0..MAX_DRAWS {
        let rows = (0..n).map(|_| rng.vector(ring, n)).collect();
        let u = Matrix::from_rows(ring, n, rows);
        if u.rank() == n {
            return Ok(u);
        }
    }
    Err(Error::InvalidParams(format!("no invertible matrix in {MAX_DRAWS} draws")))
}

// x ↦ c·tr(x)·1
fn trace_shift(layout: &MatrixLayout, ring: Ring, c: i64) -> LinearMapRep {
    let unit = layout.from_matrix(&Matrix::identity(ring, layout.n)).expect("identity fits the layout");
    let tr = layout.trace_functional(ring);
    let c = ring.from_i64(c);
    let cols: Vec<Vec<Scalar>> = tr.iter().map(|t| crate::ring::vec_scale(&(&c * t), &unit)).collect();
    LinearMapRep::new(Matrix::from_columns(ring, layout.dim(), &cols))
}

fn finish(layout: &MatrixLayout, lambda: i8, m: Matrix, shift: i64) -> Result<(LinearMapRep, LieGroundTruth)> {
    let ring = m.ring();
    let truth = LieGroundTruth {
        lambda,
        m: LinearMapRep::new(m),
        n: trace_shift(layout, ring, shift),
    };
    let l = truth.map();
    if l.matrix.rank() != layout.dim() {
        return Err(Error::InvalidParams(format!(
            "trace shift {shift} makes the map singular over {ring}"
        )));
    }
    Ok((l, truth))
}

/// A Lie triple isomorphism of the full matrix algebra on `layout`, drawn from `seed`.
pub fn random_lie_triple_iso(
    layout: &MatrixLayout,
    ring: Ring,
    seed: u64,
    shape: LieShape,
) -> Result<(LinearMapRep, LieGroundTruth)> {
    if !layout.is_full() {
        return Err(Error::Unsupported("Lie triple generators need a full matrix layout".into()));
    }
    let mut rng = Rng::new(seed);
    let u = random_invertible(ring, layout.n, &mut rng)?;
    let conj = layout.conjugation_map(&u).expect("u is invertible");
    match shape {
        LieShape::Conjugation => finish(layout, 1, conj, 0),
        LieShape::ConjugationTraceShift(c) => finish(layout, 1, conj, c),
        LieShape::NegAntiautomorphism | LieShape::NegAntiautomorphismTraceShift(_) => {
            let anti = conj.mul(&layout.transpose_map(ring).expect("full layout"));
            let c = match shape {
                LieShape::NegAntiautomorphismTraceShift(c) => c,
                _ => 0,
            };
            finish(layout, -1, anti, c)
        }
    }
}

/// `x ↦ −xᵀ`.
pub fn neg_transpose(layout: &MatrixLayout, ring: Ring) -> Result<(LinearMapRep, LieGroundTruth)> {
    let t = layout
        .transpose_map(ring)
        .ok_or_else(|| Error::Unsupported("transpose needs a full matrix layout".into()))?;
    finish(layout, -1, t, 0)
}
