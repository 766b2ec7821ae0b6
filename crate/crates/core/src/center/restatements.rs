//! Finite restatements of structural facts about loyal contexts, phrased as
//! linear-algebra or bounded-enumeration checks.

use crate::algebra::{Gma, MoritaContext};
use crate::polymap::{pair_count, pair_index, sorted_triples};
use crate::ring::{is_zero_vec, Matrix, Ring, Scalar};

/// Outcome of an exhaustive scan over a finite coordinate grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridOutcome {
    Holds,
    Counterexample(Vec<Vec<Scalar>>),
    /// The grid exceeds the bound or the ring is infinite.
    Skipped(String),
}

/// Dimension of `{(f, g) : f, g linear M → A, f(m)m' + g(m')m = 0}` on basis pairs.
pub fn pairing_annihilator_nullity(ctx: &MoritaContext) -> usize {
    let ring = ctx.ring;
    let [da, dm, _, _] = ctx.dims();
    // unknown f(e_i) coordinate u at i·da + u, g(e_j) at dm·da + j·da + u
    let mut sys = Matrix::zeros(ring, dm * dm * dm, 2 * dm * da);
    for i in 0..dm {
        for j in 0..dm {
            let row = (i * dm + j) * dm;
            for u in 0..da {
                let eu = ring.unit_vector(da, u);
                let fi = ctx.m.act_left(&eu, &ring.unit_vector(dm, j));
                let gj = ctx.m.act_left(&eu, &ring.unit_vector(dm, i));
                for o in 0..dm {
                    sys.add_to(row + o, i * da + u, &fi[o]);
                    sys.add_to(row + o, dm * da + j * da + u, &gj[o]);
                }
            }
        }
    }
    sys.nullspace().len()
}

fn grid(ring: Ring, dim: usize, bound: u64) -> Result<Vec<Vec<Scalar>>, String> {
    let p = ring
        .modulus()
        .ok_or_else(|| "grid scans need a finite ring".to_string())?;
    let size = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if size > bound as u128 {
        return Err(format!("grid of size {size} exceeds bound {bound}"));
    }
    let mut out = Vec::new();
    let mut digits = vec![0u64; dim];
    loop {
        out.push(digits.iter().map(|&d| ring.from_i64(d as i64)).collect());
        let mut pos = dim;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// For every nonzero basis element `a` of A and `α ∈ π_A(Z(G))`, `α a = 0` forces `α = 0`.
pub fn projection_cancellation(g: &Gma, bound: u64) -> GridOutcome {
    let c = g.center();
    let ctx = g.context();
    let pts = match grid(g.ring(), c.pi_a.dim(), bound) {
        Ok(p) => p,
        Err(e) => return GridOutcome::Skipped(e),
    };
    for coords in &pts {
        let alpha = c.pi_a.combine(coords);
        if is_zero_vec(&alpha) {
            continue;
        }
        for i in 0..ctx.a.dim {
            let a = ctx.a.basis(i);
            if is_zero_vec(&ctx.a.mul(&alpha, &a)) {
                return GridOutcome::Counterexample(vec![alpha, a]);
            }
        }
    }
    GridOutcome::Holds
}

/// Z(G) has no zero divisors: exhaustive scan of products over its coordinate grid.
pub fn center_has_no_zero_divisors(g: &Gma, bound: u64) -> GridOutcome {
    let c = g.center();
    let pts = match grid(g.ring(), c.dim(), bound.min(u32::MAX as u64)) {
        Ok(p) => p,
        Err(e) => return GridOutcome::Skipped(e),
    };
    if (pts.len() as u128).pow(2) > bound as u128 {
        return GridOutcome::Skipped(format!("{} products exceed bound {bound}", pts.len().pow(2)));
    }
    let elems: Vec<Vec<Scalar>> = pts
        .iter()
        .map(|p| c.z_g.combine(p))
        .filter(|z| !is_zero_vec(z))
        .collect();
    for z in &elems {
        for w in &elems {
            if is_zero_vec(&g.mul(z, w)) {
                return GridOutcome::Counterexample(vec![z.clone(), w.clone()]);
            }
        }
    }
    GridOutcome::Holds
}

/// Which corner/module pair a square-annihilator check runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `K: B × B → N`, condition `x K(x, x) = 0`.
    BOnN,
    /// `K: A × A → M`, condition `x K(x, x) = 0`.
    AOnM,
}

/// Symmetric bilinear `K` with `x K(x, x) = 0` coefficientwise must have
/// `K(x, x) = 0` coefficientwise. Returns whether the containment holds.
pub fn square_annihilator_containment(ctx: &MoritaContext, side: Side) -> bool {
    let ring = ctx.ring;
    let (alg, dv, act): (_, usize, Box<dyn Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>>) = match side {
        Side::BOnN => (&ctx.b, ctx.n.dim, Box::new(|x, v| ctx.n.act_left(x, v))),
        Side::AOnM => (&ctx.a, ctx.m.dim, Box::new(|x, v| ctx.m.act_left(x, v))),
    };
    let d = alg.dim;
    if dv == 0 {
        return true;
    }
    let pairs = pair_count(d);
    // left action of basis e_t on module basis v_o
    let acts: Vec<Vec<Vec<Scalar>>> = (0..d)
        .map(|t| (0..dv).map(|o| act(&alg.basis(t), &ring.unit_vector(dv, o))).collect())
        .collect();
    let triples = sorted_triples(d);
    let mut sys = Matrix::zeros(ring, triples.len() * dv, pairs * dv);
    let two = ring.from_i64(2);
    for (row, m) in triples.iter().enumerate() {
        for (t, rest) in crate::polymap::split_triple(*m) {
            let p = pair_index(d, rest[0], rest[1]);
            let factor = if rest[0] == rest[1] { ring.one() } else { two.clone() };
            for o in 0..dv {
                for (r, x) in acts[t][o].iter().enumerate() {
                    if !x.is_zero() {
                        sys.add_to(row * dv + r, p * dv + o, &(&factor * x));
                    }
                }
            }
        }
    }
    // K(x, x) = 0 coefficientwise means every monomial coefficient vanishes,
    // which in symmetric coordinates is the zero vector
    sys.nullspace().iter().all(|v| is_zero_vec(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builders::{full_matrix, upper_triangular};

    #[test]
    fn restatements_on_t3() {
        let f5 = Ring::PrimeField(5);
        let ctx = upper_triangular(3, 1, f5).unwrap();
        assert_eq!(pairing_annihilator_nullity(&ctx), 0);
        let g = Gma::assemble(ctx.clone()).unwrap();
        assert_eq!(projection_cancellation(&g, 1000), GridOutcome::Holds);
        assert_eq!(center_has_no_zero_divisors(&g, 1000), GridOutcome::Holds);
        assert!(square_annihilator_containment(&ctx, Side::BOnN));
        assert!(square_annihilator_containment(&ctx, Side::AOnM));
    }

    #[test]
    fn grid_skips_over_rationals() {
        let g = Gma::assemble(full_matrix(2, 1, Ring::Rational).unwrap()).unwrap();
        assert!(matches!(center_has_no_zero_divisors(&g, 1000), GridOutcome::Skipped(_)));
    }
}
