//! Centers, the projections of Z(G) to the corners, the isomorphism φ between
//! them, and the structural checks that decide which decomposition results apply.

mod checks;
mod restatements;
mod report;

pub use checks::{
    central_jordan_radical, check_all_commuting_proper, check_faithful, check_commutator_square_identity,
    check_loyal, commuting_linear_space, proper_linear_space, Faithfulness, IdentityWitness,
    Loyalty, LoyaltyOptions,
};
pub use restatements::{
    center_has_no_zero_divisors, pairing_annihilator_nullity, projection_cancellation,
    square_annihilator_containment, GridOutcome, Side,
};
pub use report::{find_independent_pair, HypothesisReport, ReportOptions, Route};

use crate::algebra::Gma;
use crate::ring::{Matrix, Ring, Scalar, Subspace};

/// Z(G), Z(A), Z(B), π_A(Z(G)), π_B(Z(G)) and φ.
///
/// `pi_a` and `pi_b` have bases `π_A(z_t)`, `π_B(z_t)` for the basis `z_t` of
/// `z_g` whenever the projections are injective, so φ is the identity on
/// coordinates.
#[derive(Clone, Debug)]
pub struct CenterData {
    pub ring: Ring,
    pub z_g: Subspace,
    pub z_a: Subspace,
    pub z_b: Subspace,
    pub pi_a: Subspace,
    pub pi_b: Subspace,
    pub phi: Result<PhiMap, String>,
    offsets: [usize; 5],
}

/// φ: π_A(Z(G)) → π_B(Z(G)), `a ⊕ φ(a) ∈ Z(G)`.
#[derive(Clone, Debug)]
pub struct PhiMap {
    pi_a: Subspace,
    pi_b: Subspace,
}

impl PhiMap {
    pub fn apply(&self, a: &[Scalar]) -> Option<Vec<Scalar>> {
        self.pi_a.coords(a).map(|c| self.pi_b.combine(&c))
    }

    pub fn apply_inverse(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        self.pi_b.coords(b).map(|c| self.pi_a.combine(&c))
    }

    /// Matrix of φ in the bases of π_A(Z(G)) and π_B(Z(G)).
    pub fn matrix(&self) -> Matrix {
        Matrix::identity(self.pi_a.ring(), self.pi_a.dim())
    }
}

impl CenterData {
    pub fn compute(g: &Gma) -> CenterData {
        let ring = g.ring();
        let ctx = g.context();
        let [da, dm, dn, db] = ctx.dims();
        let unknowns = da + db;
        let rows = dm * dm + dn * dn + da * da + db * db;
        let mut sys = Matrix::zeros(ring, rows, unknowns);
        let a_basis = |u| ring.unit_vector(da, u);
        let b_basis = |w| ring.unit_vector(db, w);
        // a·m − m·b, n·a − b·n, [a, A], [b, B]
        for u in 0..da {
            let ea = a_basis(u);
            let mut r = 0;
            for j in 0..dm {
                let v = ctx.m.act_left(&ea, &ring.unit_vector(dm, j));
                for x in v {
                    sys.set(r, u, x);
                    r += 1;
                }
            }
            for j in 0..dn {
                let v = ctx.n.act_right(&ring.unit_vector(dn, j), &ea);
                for x in v {
                    sys.set(r, u, x);
                    r += 1;
                }
            }
            for i in 0..da {
                for x in ctx.a.commutator(&ea, &a_basis(i)) {
                    sys.set(r, u, x);
                    r += 1;
                }
            }
        }
        for w in 0..db {
            let eb = b_basis(w);
            let col = da + w;
            let mut r = 0;
            for j in 0..dm {
                for x in ctx.m.act_right(&ring.unit_vector(dm, j), &eb) {
                    sys.set(r, col, -x);
                    r += 1;
                }
            }
            for j in 0..dn {
                for x in ctx.n.act_left(&eb, &ring.unit_vector(dn, j)) {
                    sys.set(r, col, -x);
                    r += 1;
                }
            }
            r += da * da;
            for i in 0..db {
                for x in ctx.b.commutator(&eb, &b_basis(i)) {
                    sys.set(r, col, x);
                    r += 1;
                }
            }
        }
        let offsets = g.offsets();
        let z_vectors: Vec<Vec<Scalar>> = sys
            .nullspace()
            .into_iter()
            .map(|v| {
                let mut z = g.zero();
                z[..da].clone_from_slice(&v[..da]);
                z[offsets[3]..].clone_from_slice(&v[da..]);
                z
            })
            .collect();
        let a_proj: Vec<Vec<Scalar>> = z_vectors.iter().map(|z| z[..da].to_vec()).collect();
        let b_proj: Vec<Vec<Scalar>> = z_vectors.iter().map(|z| z[offsets[3]..].to_vec()).collect();
        let pi_a = Subspace::span(ring, da, &a_proj);
        let pi_b = Subspace::span(ring, db, &b_proj);
        let k = z_vectors.len();
        let z_g = Subspace::from_independent(ring, g.dim(), z_vectors);
        let right_faithful = checks::check_faithful(ctx).right;
        let phi = if !right_faithful {
            Err("M is not faithful as a right B-module".to_string())
        } else if pi_a.dim() != k || pi_b.dim() != k {
            Err("projection of Z(G) to a corner is not injective".to_string())
        } else {
            Ok(PhiMap {
                pi_a: pi_a.clone(),
                pi_b: pi_b.clone(),
            })
        };
        CenterData {
            ring,
            z_g,
            z_a: ctx.a.center(),
            z_b: ctx.b.center(),
            pi_a,
            pi_b,
            phi,
            offsets,
        }
    }

    pub fn dim(&self) -> usize {
        self.z_g.dim()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        self.z_g.basis()
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.z_g.contains(x)
    }

    /// `a ⊕ b` as an element of G.
    pub fn diagonal(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut z = self.ring.zeros(self.offsets[4]);
        z[..self.offsets[1]].clone_from_slice(a);
        z[self.offsets[3]..].clone_from_slice(b);
        z
    }

    pub fn phi(&self) -> Option<&PhiMap> {
        self.phi.as_ref().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builders::{full_matrix, inflated, upper_triangular};

    fn gma(ctx: crate::algebra::MoritaContext) -> Gma {
        Gma::assemble(ctx).unwrap()
    }

    // independent oracle: the nullspace of x ↦ ([x, e_i])_i over all of G
    fn raw_center(g: &Gma) -> Subspace {
        Subspace::from_independent(g.ring(), g.dim(), g.as_algebra().center().basis().to_vec())
    }

    #[test]
    fn full_matrix_center_is_scalars() {
        let f5 = Ring::PrimeField(5);
        let g = gma(full_matrix(3, 1, f5).unwrap());
        let c = g.center();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(g.unit()));
        assert!(c.z_g.same_as(&raw_center(&g)));
        let phi = c.phi().unwrap();
        assert_eq!(phi.apply(&[f5.from_i64(3)]).unwrap(), vec![
            f5.from_i64(3), f5.zero(), f5.zero(), f5.from_i64(3)
        ]);
    }

    #[test]
    fn triangular_centers() {
        let f5 = Ring::PrimeField(5);
        for (n, k) in [(2, 1), (3, 1)] {
            let g = gma(upper_triangular(n, k, f5).unwrap());
            assert_eq!(g.center().dim(), 1);
            assert!(g.center().contains(g.unit()));
            assert!(g.center().z_g.same_as(&raw_center(&g)));
        }
    }

    #[test]
    fn inflated_center_matches_raw() {
        let f5 = Ring::PrimeField(5);
        let g = gma(inflated(f5, 1, &Matrix::identity(f5, 1)).unwrap());
        assert!(g.center().z_g.same_as(&raw_center(&g)));
    }
}
