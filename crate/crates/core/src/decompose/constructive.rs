use super::{ComponentGrid, ProperTraceForm};
use crate::algebra::Gma;
use crate::center::PhiMap;
use crate::polymap::{LinearMapRep, TraceMap};
use crate::ring::{axpy, vec_add, vec_sub, Matrix, Scalar, Subspace};

/// One named identity checked on basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeCheck {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

/// The central data read off the block components of a centralizing trace.
///
/// Values live in local block coordinates; per-basis lists are indexed by the
/// basis of the argument block.
#[derive(Clone, Debug)]
pub struct ConstructiveWitness {
    /// `φ(f11(1,1)) − k11(1,1)` in B.
    pub kappa: Vec<Scalar>,
    /// `φ⁻¹(k44(1′,1′)) − f44(1′,1′)` in A.
    pub theta: Vec<Scalar>,
    /// `α(a2) = f12(1, a2) − φ⁻¹(k12(1, a2))`.
    pub alpha: Vec<Vec<Scalar>>,
    /// `τ(a3) = f13(1, a3) − φ⁻¹(k13(1, a3))`.
    pub tau: Vec<Vec<Scalar>>,
    /// `γ: B → π_A(Z(G))` with `f14(a1, a4) = γ(a4) a1 + δ(a1, a4)`.
    pub gamma: Vec<Vec<Scalar>>,
    /// `γ′: A → π_B(Z(G))` with `k14(a1, a4) = γ′(a1) a4 + φ(δ(a1, a4))`.
    pub gamma_prime: Vec<Vec<Scalar>>,
    /// `δ[a1][a4] ∈ π_A(Z(G))`.
    pub delta: Vec<Vec<Vec<Scalar>>>,
    /// `f12(a1, a2) = ξ(a2) a1 + η(a1, a2)` with values in Z(A), when solvable.
    pub xi: Option<Vec<Vec<Scalar>>>,
    pub eta: Option<Vec<Vec<Vec<Scalar>>>>,
    /// `θ − γ(1′)`.
    pub epsilon: Vec<Scalar>,
    /// `κ − γ′(1)`.
    pub epsilon_prime: Vec<Scalar>,
    pub checks: Vec<ShapeCheck>,
}

struct Blocks<'a> {
    g: &'a Gma,
    phi: &'a PhiMap,
    dims: [usize; 4],
}

impl Blocks<'_> {
    fn e(&self, block: usize, i: usize) -> Vec<Scalar> {
        self.g.ring().unit_vector(self.dims[block], i)
    }

    fn phi(&self, a: &[Scalar], what: &str) -> Result<Vec<Scalar>, String> {
        self.phi.apply(a).ok_or_else(|| format!("{what} lies outside pi_A(Z(G))"))
    }

    fn phi_inv(&self, b: &[Scalar], what: &str) -> Result<Vec<Scalar>, String> {
        self.phi.apply_inverse(b).ok_or_else(|| format!("{what} lies outside pi_B(Z(G))"))
    }
}

fn combine(ring: crate::ring::Ring, len: usize, coords: &[Scalar], basis: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut v = ring.zeros(len);
    for (c, b) in coords.iter().zip(basis) {
        axpy(&mut v, c, b);
    }
    v
}

fn place(sys: &mut Matrix, row0: usize, col: usize, v: &[Scalar]) {
    for (k, x) in v.iter().enumerate() {
        if !x.is_zero() {
            sys.add_to(row0 + k, col, x);
        }
    }
}

type GammaSolution = (Vec<Vec<Scalar>>, Vec<Vec<Scalar>>, Vec<Vec<Vec<Scalar>>>);

// unknowns γ(e_w) ∈ π_A, γ′(e_u) ∈ π_B, δ(e_u, e_w) ∈ π_A, all in π coordinates
fn solve_gamma(bl: &Blocks, grid: &ComponentGrid) -> Option<GammaSolution> {
    let g = bl.g;
    let ring = g.ring();
    let ctx = g.context();
    let [da, _, _, db] = bl.dims;
    let c = g.center();
    let pa = c.pi_a.basis();
    let pb = c.pi_b.basis();
    let r = pa.len();
    let gp0 = db * r;
    let d0 = gp0 + da * r;
    let cols = d0 + da * db * r;
    let mut sys = Matrix::zeros(ring, da * db * (da + db), cols);
    let mut rhs = Vec::with_capacity(sys.rows());
    for u in 0..da {
        let eu = bl.e(0, u);
        for w in 0..db {
            let ew = bl.e(3, w);
            let row0 = (u * db + w) * (da + db);
            for t in 0..r {
                place(&mut sys, row0, w * r + t, &ctx.a.mul(&pa[t], &eu));
                place(&mut sys, row0, d0 + (u * db + w) * r + t, &pa[t]);
                place(&mut sys, row0 + da, gp0 + u * r + t, &ctx.b.mul(&pb[t], &ew));
                place(&mut sys, row0 + da, d0 + (u * db + w) * r + t, &pb[t]);
            }
            rhs.extend(grid.eval(0, 0, 3, &eu, &ew));
            rhs.extend(grid.eval(3, 0, 3, &eu, &ew));
        }
    }
    let sol = sys.solve(&rhs)?;
    let gamma = (0..db).map(|w| combine(ring, da, &sol[w * r..(w + 1) * r], pa)).collect();
    let gamma_prime = (0..da)
        .map(|u| combine(ring, db, &sol[gp0 + u * r..gp0 + (u + 1) * r], pb))
        .collect();
    let delta = (0..da)
        .map(|u| {
            (0..db)
                .map(|w| {
                    let k = d0 + (u * db + w) * r;
                    combine(ring, da, &sol[k..k + r], pa)
                })
                .collect()
        })
        .collect();
    Some((gamma, gamma_prime, delta))
}

type XiSolution = (Vec<Vec<Scalar>>, Vec<Vec<Vec<Scalar>>>);

// unknowns ξ(e_j) ∈ Z(A), η(e_u, e_j) ∈ Z(A) with f12(e_u, e_j) = ξ(e_j) e_u + η(e_u, e_j)
fn solve_xi(bl: &Blocks, grid: &ComponentGrid, z_a: &Subspace) -> Option<XiSolution> {
    let g = bl.g;
    let ring = g.ring();
    let ctx = g.context();
    let [da, dm, _, _] = bl.dims;
    let za = z_a.basis();
    let s = za.len();
    let e0 = dm * s;
    let mut sys = Matrix::zeros(ring, da * dm * da, e0 + da * dm * s);
    let mut rhs = Vec::with_capacity(sys.rows());
    for u in 0..da {
        let eu = bl.e(0, u);
        for j in 0..dm {
            let row0 = (u * dm + j) * da;
            for t in 0..s {
                place(&mut sys, row0, j * s + t, &ctx.a.mul(&za[t], &eu));
                place(&mut sys, row0, e0 + (u * dm + j) * s + t, &za[t]);
            }
            rhs.extend(grid.eval(0, 0, 1, &eu, &bl.e(1, j)));
        }
    }
    let sol = sys.solve(&rhs)?;
    let xi = (0..dm).map(|j| combine(ring, da, &sol[j * s..(j + 1) * s], za)).collect();
    let eta = (0..da)
        .map(|u| {
            (0..dm)
                .map(|j| {
                    let k = e0 + (u * dm + j) * s;
                    combine(ring, da, &sol[k..k + s], za)
                })
                .collect()
        })
        .collect();
    Some((xi, eta))
}

fn check(name: &'static str, failures: Vec<String>) -> ShapeCheck {
    ShapeCheck {
        name,
        holds: failures.is_empty(),
        detail: failures.join(", "),
    }
}

impl ConstructiveWitness {
    /// Reads κ, θ, α, τ, γ, γ′, δ, ξ, η, ε, ε′ from the components and runs the
    /// shape checks. Fails when φ is unavailable, a value that must lie in
    /// π_A or π_B does not, or the γ system is inconsistent.
    pub fn extract(g: &Gma, grid: &ComponentGrid) -> Result<ConstructiveWitness, String> {
        let c = g.center();
        let phi = c.phi.as_ref().map_err(|e| format!("phi unavailable: {e}"))?;
        let ctx = g.context();
        let dims = g.block_dims();
        let [da, dm, dn, db] = dims;
        let bl = Blocks { g, phi, dims };
        let one = &ctx.a.unit;
        let one_b = &ctx.b.unit;

        let f11 = grid.eval(0, 0, 0, one, one);
        let kappa = vec_sub(&bl.phi(&f11, "f11(1,1)")?, &grid.eval(3, 0, 0, one, one));
        let k44 = grid.eval(3, 3, 3, one_b, one_b);
        let theta = vec_sub(&bl.phi_inv(&k44, "k44(1',1')")?, &grid.eval(0, 3, 3, one_b, one_b));
        let side = |block: usize, count: usize, name: &str| -> Result<Vec<Vec<Scalar>>, String> {
            (0..count)
                .map(|j| {
                    let e = bl.e(block, j);
                    let k = grid.eval(3, 0, block, one, &e);
                    let back = bl.phi_inv(&k, &format!("k1{}(1, e_{j}) for {name}", block + 1))?;
                    Ok(vec_sub(&grid.eval(0, 0, block, one, &e), &back))
                })
                .collect()
        };
        // alpha is evaluated on M, as its defining formula f12(1, a2) - phi^-1(k12(1, a2)) requires
        let alpha = side(1, dm, "alpha")?;
        let tau = side(2, dn, "tau")?;
        let (gamma, gamma_prime, delta) =
            solve_gamma(&bl, grid).ok_or("no gamma, gamma', delta solve f14 and k14 modulo the center")?;
        let gamma_of_one = (0..db).fold(g.ring().zeros(da), |acc, w| {
            vec_add(&acc, &crate::ring::vec_scale(&one_b[w], &gamma[w]))
        });
        let gamma_prime_of_one = (0..da).fold(g.ring().zeros(db), |acc, u| {
            vec_add(&acc, &crate::ring::vec_scale(&one[u], &gamma_prime[u]))
        });
        let epsilon = vec_sub(&theta, &gamma_of_one);
        let epsilon_prime = vec_sub(&kappa, &gamma_prime_of_one);
        let (xi, eta) = match solve_xi(&bl, grid, &c.z_a) {
            Some((x, e)) => (Some(x), Some(e)),
            None => (None, None),
        };
        let mut w = ConstructiveWitness {
            kappa,
            theta,
            alpha,
            tau,
            gamma,
            gamma_prime,
            delta,
            xi,
            eta,
            epsilon,
            epsilon_prime,
            checks: Vec::new(),
        };
        w.checks = w.run_checks(&bl, grid)?;
        Ok(w)
    }

    fn run_checks(&self, bl: &Blocks, grid: &ComponentGrid) -> Result<Vec<ShapeCheck>, String> {
        let g = bl.g;
        let c = g.center();
        let ctx = g.context();
        let [da, dm, dn, db] = bl.dims;
        let eps = &self.epsilon;
        let epsp = &self.epsilon_prime;
        let mut checks = Vec::new();

        let pair_central = c.contains(&c.diagonal(eps, epsp));
        checks.push(check(
            "epsilon_pair_central",
            if pair_central { vec![] } else { vec!["epsilon + epsilon'".into()] },
        ));

        let mut f14 = Vec::new();
        let mut k14 = Vec::new();
        for u in 0..da {
            for w in 0..db {
                let (eu, ew) = (bl.e(0, u), bl.e(3, w));
                let f = vec_sub(&grid.eval(0, 0, 3, &eu, &ew), &ctx.a.mul(&self.gamma[w], &eu));
                if !c.z_a.contains(&f) {
                    f14.push(format!("({u},{w})"));
                }
                let k = vec_sub(&grid.eval(3, 0, 3, &eu, &ew), &ctx.b.mul(&self.gamma_prime[u], &ew));
                if !c.z_b.contains(&k) {
                    k14.push(format!("({u},{w})"));
                }
            }
        }
        checks.push(check("f14_minus_gamma_central", f14));
        checks.push(check("k14_minus_gamma_prime_central", k14));
        checks.push(check("components_vanish", grid.vanishing_violations()));
        let diag = |i: usize| grid.diagonal_centrality_violations(g, i).iter().map(|(u, v)| format!("({u},{v})")).collect();
        checks.push(check("m_diagonal_central", diag(1)));
        checks.push(check("n_diagonal_central", diag(2)));

        // φ(γ(a4)) and φ⁻¹(γ′(a1)) exist by construction
        let phi_gamma: Vec<Vec<Scalar>> = self
            .gamma
            .iter()
            .map(|v| bl.phi(v, "gamma"))
            .collect::<Result<_, _>>()?;
        let phi_inv_gamma_prime: Vec<Vec<Scalar>> = self
            .gamma_prime
            .iter()
            .map(|v| bl.phi_inv(v, "gamma'"))
            .collect::<Result<_, _>>()?;

        let mut g24 = Vec::new();
        let mut h34 = Vec::new();
        for w in 0..db {
            let ew = bl.e(3, w);
            let shift = vec_add(&ctx.b.mul(epsp, &ew), &phi_gamma[w]);
            for j in 0..dm {
                let ej = bl.e(1, j);
                if grid.eval(1, 1, 3, &ej, &ew) != ctx.m.act_right(&ej, &shift) {
                    g24.push(format!("({j},{w})"));
                }
            }
            for k in 0..dn {
                let ek = bl.e(2, k);
                if grid.eval(2, 2, 3, &ek, &ew) != ctx.n.act_left(&shift, &ek) {
                    h34.push(format!("({k},{w})"));
                }
            }
        }
        let mut g12 = Vec::new();
        let mut h13 = Vec::new();
        for u in 0..da {
            let eu = bl.e(0, u);
            let eps_a = ctx.a.mul(eps, &eu);
            let left = vec_add(&eps_a, &phi_inv_gamma_prime[u]);
            for j in 0..dm {
                let ej = bl.e(1, j);
                if grid.eval(1, 0, 1, &eu, &ej) != ctx.m.act_left(&left, &ej) {
                    g12.push(format!("({u},{j})"));
                }
            }
            for k in 0..dn {
                let ek = bl.e(2, k);
                let expect = vec_add(&ctx.n.act_right(&ek, &eps_a), &ctx.n.act_left(&self.gamma_prime[u], &ek));
                if grid.eval(2, 0, 2, &eu, &ek) != expect {
                    h13.push(format!("({u},{k})"));
                }
            }
        }
        checks.push(check("g24_shape", g24));
        checks.push(check("g12_shape", g12));
        checks.push(check("h13_shape", h13));
        checks.push(check("h34_shape", h34));

        let mut pairing = Vec::new();
        for j in 0..dm {
            let ej = bl.e(1, j);
            for k in 0..dn {
                let ek = bl.e(2, k);
                let a = vec_sub(&grid.eval(0, 1, 2, &ej, &ek), &ctx.a.mul(eps, &ctx.phi(&ej, &ek)));
                let b = vec_sub(&grid.eval(3, 1, 2, &ej, &ek), &ctx.b.mul(epsp, &ctx.psi(&ek, &ej)));
                if !c.contains(&c.diagonal(&a, &b)) {
                    pairing.push(format!("({j},{k})"));
                }
            }
        }
        checks.push(check("pairing_part_central", pairing));
        Ok(checks)
    }

    pub fn failed_checks(&self) -> Vec<&ShapeCheck> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }

    /// `z = ε ⊕ ε′`, `μ(x) = μ_A(x) ⊕ φ(μ_A(x))`, `ν = T − z x² − μ(x) x`,
    /// with ν required to be central-valued.
    pub fn proper_form(&self, g: &Gma, t: &TraceMap) -> Result<ProperTraceForm, String> {
        let ring = g.ring();
        let c = g.center();
        let phi = c.phi.as_ref().map_err(|e| format!("phi unavailable: {e}"))?;
        let z = c.diagonal(&self.epsilon, &self.epsilon_prime);
        if !c.contains(&z) {
            return Err("epsilon + epsilon' is not central".into());
        }
        // μ_A on the basis of G: φ⁻¹γ′ on A, α on M, τ on N, γ on B
        let mut a_parts = Vec::with_capacity(g.dim());
        for (u, v) in self.gamma_prime.iter().enumerate() {
            let a = phi
                .apply_inverse(v)
                .ok_or_else(|| format!("gamma'(e_{u}) lies outside pi_B(Z(G))"))?;
            a_parts.push(a);
        }
        a_parts.extend(self.alpha.iter().chain(&self.tau).chain(&self.gamma).cloned());
        let mut mu_cols = Vec::with_capacity(g.dim());
        for (i, a) in a_parts.iter().enumerate() {
            let b = phi
                .apply(a)
                .ok_or_else(|| format!("mu_A(e_{i}) lies outside pi_A(Z(G))"))?;
            mu_cols.push(c.diagonal(a, &b));
        }
        let partial = ProperTraceForm {
            z,
            mu: LinearMapRep::new(Matrix::from_columns(ring, g.dim(), &mu_cols)),
            nu: TraceMap::zero(ring, g.dim(), g.dim()),
        };
        let nu = t.sub(&partial.reconstruct(g));
        let bad: Vec<usize> = nu
            .symmetric_values()
            .iter()
            .enumerate()
            .filter(|(_, v)| !c.contains(v))
            .map(|(p, _)| p)
            .collect();
        if !bad.is_empty() {
            return Err(format!("nu = T - z x^2 - mu(x) x is not central at pairs {bad:?}"));
        }
        Ok(ProperTraceForm { nu, ..partial })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builders::full_matrix;
    use crate::polymap::BilinearMapRep;
    use crate::ring::Ring;

    #[test]
    fn product_on_m4() {
        let f5 = Ring::PrimeField(5);
        let g = Gma::assemble(full_matrix(4, 2, f5).unwrap()).unwrap();
        let t = TraceMap::from_bilinear(&BilinearMapRep::product(&g));
        let grid = ComponentGrid::new(&g, &t);
        let w = ConstructiveWitness::extract(&g, &grid).unwrap();
        let ctx = g.context();
        assert_eq!(w.kappa, ctx.b.unit);
        assert_eq!(w.theta, ctx.a.unit);
        assert_eq!(w.epsilon, ctx.a.unit);
        assert_eq!(w.epsilon_prime, ctx.b.unit);
        let zero_a = f5.zeros(4);
        assert!(w.alpha.iter().chain(&w.tau).chain(&w.gamma).all(|v| *v == zero_a));
        assert!(w.gamma_prime.iter().all(|v| *v == f5.zeros(4)));
        assert!(w.failed_checks().is_empty(), "{:?}", w.failed_checks());
        let form = w.proper_form(&g, &t).unwrap();
        assert_eq!(form.reconstruct(&g), t);
    }
}
