use crate::algebra::{AlgebraSpec, Gma, MoritaContext};
use crate::polymap::{pair_count, pair_index, Verdict};
use crate::ring::{is_zero_vec, vec_sub, Matrix, Ring, Scalar, Subspace};

/// Faithfulness of M on each side, with a nonzero annihilating element when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Faithfulness {
    pub left: bool,
    pub left_witness: Option<Vec<Scalar>>,
    pub right: bool,
    pub right_witness: Option<Vec<Scalar>>,
}

/// Kernels of `a ↦ (a·m_j)_j` and `b ↦ (m_j·b)_j`.
pub fn check_faithful(ctx: &MoritaContext) -> Faithfulness {
    let ring = ctx.ring;
    let [da, dm, _, db] = ctx.dims();
    let kernel = |acting: usize, act: &dyn Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>| {
        let mut sys = Matrix::zeros(ring, dm * dm, acting);
        for u in 0..acting {
            let eu = ring.unit_vector(acting, u);
            for j in 0..dm {
                for (o, x) in act(&eu, &ring.unit_vector(dm, j)).into_iter().enumerate() {
                    sys.set(j * dm + o, u, x);
                }
            }
        }
        sys.nullspace().into_iter().next()
    };
    let left_witness = kernel(da, &|a, m| ctx.m.act_left(a, m));
    let right_witness = kernel(db, &|b, m| ctx.m.act_right(m, b));
    Faithfulness {
        left: left_witness.is_none(),
        left_witness,
        right: right_witness.is_none(),
        right_witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoyaltyOptions {
    /// Maximum number of projective candidates enumerated over 𝔽_p.
    pub bound: u64,
    /// Caller asserts the context is the Peirce context of a prime algebra.
    pub prime_peirce: bool,
}

impl Default for LoyaltyOptions {
    fn default() -> Self {
        LoyaltyOptions {
            bound: 390_625,
            prime_peirce: false,
        }
    }
}

/// Whether `a M b = 0` forces `a = 0` or `b = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Loyalty {
    Loyal,
    NotLoyal { a: Vec<Scalar>, b: Vec<Scalar> },
    Unknown(String),
}

impl Loyalty {
    pub fn is_loyal(&self) -> bool {
        matches!(self, Loyalty::Loyal)
    }
}

impl std::fmt::Display for Loyalty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Loyalty::Loyal => write!(f, "loyal"),
            Loyalty::NotLoyal { a, b } => {
                write!(f, "not loyal (a = {}, b = {})", crate::ring::format_vec(a), crate::ring::format_vec(b))
            }
            Loyalty::Unknown(why) => write!(f, "unknown ({why})"),
        }
    }
}

/// Exact over 𝔽_p by enumerating the smaller side up to scalars; over ℚ only a
/// structural certificate can yield `Loyal`.
pub fn check_loyal(ctx: &MoritaContext, opts: &LoyaltyOptions) -> Loyalty {
    let ring = ctx.ring;
    let [da, dm, _, db] = ctx.dims();
    if dm == 0 {
        return Loyalty::NotLoyal {
            a: ctx.a.unit.clone(),
            b: ctx.b.unit.clone(),
        };
    }
    let p = match ring {
        Ring::PrimeField(p) => p,
        Ring::Rational => {
            let faith = check_faithful(ctx);
            if (da == 1 && faith.right) || (db == 1 && faith.left) {
                return Loyalty::Loyal;
            }
            if opts.prime_peirce {
                return Loyalty::Loyal;
            }
            return Loyalty::Unknown("no structural certificate applies over Q".into());
        }
    };
    let enumerate_a = da <= db;
    let k = if enumerate_a { da } else { db };
    let count = projective_count(p, k);
    if count.map_or(true, |c| c > opts.bound) {
        return Loyalty::Unknown(format!(
            "enumeration of {} candidates exceeds bound {}",
            count.map_or_else(|| "too many".to_string(), |c| c.to_string()),
            opts.bound
        ));
    }
    let other = if enumerate_a { db } else { da };
    let m_basis: Vec<Vec<Scalar>> = (0..dm).map(|j| ring.unit_vector(dm, j)).collect();
    for cand in ProjectivePoints::new(ring, p, k) {
        let mut sys = Matrix::zeros(ring, dm * dm, other);
        for (j, m) in m_basis.iter().enumerate() {
            let fixed = if enumerate_a {
                ctx.m.act_left(&cand, m)
            } else {
                ctx.m.act_right(m, &cand)
            };
            for w in 0..other {
                let ew = ring.unit_vector(other, w);
                let v = if enumerate_a {
                    ctx.m.act_right(&fixed, &ew)
                } else {
                    // a·(m·b) = (a·m)·b
                    ctx.m.act_left(&ew, &fixed)
                };
                for (o, x) in v.into_iter().enumerate() {
                    sys.set(j * dm + o, w, x);
                }
            }
        }
        if let Some(k) = sys.nullspace().into_iter().next() {
            return if enumerate_a {
                Loyalty::NotLoyal { a: cand, b: k }
            } else {
                Loyalty::NotLoyal { a: k, b: cand }
            };
        }
    }
    Loyalty::Loyal
}

fn projective_count(p: u64, k: usize) -> Option<u64> {
    let mut total: u64 = 0;
    let mut pow: u64 = 1;
    for _ in 0..k {
        total = total.checked_add(pow)?;
        pow = pow.checked_mul(p)?;
    }
    Some(total)
}

/// Nonzero vectors of 𝔽_p^k with leading nonzero coordinate 1, ordered by the
/// leading position and then lexicographically.
struct ProjectivePoints {
    ring: Ring,
    p: u64,
    k: usize,
    lead: usize,
    tail: Vec<u64>,
    done: bool,
}

impl ProjectivePoints {
    fn new(ring: Ring, p: u64, k: usize) -> ProjectivePoints {
        ProjectivePoints {
            ring,
            p,
            k,
            lead: 0,
            tail: vec![0; k.saturating_sub(1)],
            done: k == 0,
        }
    }
}

impl Iterator for ProjectivePoints {
    type Item = Vec<Scalar>;

    fn next(&mut self) -> Option<Vec<Scalar>> {
        if self.done {
            return None;
        }
        let mut v = self.ring.zeros(self.k);
        v[self.lead] = self.ring.one();
        let free = self.k - 1 - self.lead;
        for t in 0..free {
            v[self.lead + 1 + t] = self.ring.from_i64(self.tail[t] as i64);
        }
        // advance the tail odometer, least significant digit last
        let mut pos = free;
        loop {
            if pos == 0 {
                self.lead += 1;
                if self.lead == self.k {
                    self.done = true;
                }
                self.tail.iter_mut().for_each(|d| *d = 0);
                break;
            }
            pos -= 1;
            self.tail[pos] += 1;
            if self.tail[pos] < self.p {
                break;
            }
            self.tail[pos] = 0;
        }
        Some(v)
    }
}

/// Maps `f` with `[f(x), x] = 0`, vectorised as `f(e_i)` coordinate `o` at `i·d + o`.
pub fn commuting_linear_space(alg: &AlgebraSpec) -> Subspace {
    let ring = alg.ring;
    let d = alg.dim;
    let pairs = pair_count(d);
    let mut sys = Matrix::zeros(ring, pairs * d, d * d);
    let comm: Vec<Vec<Vec<Scalar>>> = (0..d)
        .map(|o| (0..d).map(|t| alg.commutator(&alg.basis(o), &alg.basis(t))).collect())
        .collect();
    for i in 0..d {
        for j in i..d {
            let row = pair_index(d, i, j) * d;
            // [f(e_i), e_j] + [f(e_j), e_i], counted once on the diagonal
            for o in 0..d {
                for (r, x) in comm[o][j].iter().enumerate() {
                    sys.add_to(row + r, i * d + o, x);
                }
                if i != j {
                    for (r, x) in comm[o][i].iter().enumerate() {
                        sys.add_to(row + r, j * d + o, x);
                    }
                }
            }
        }
    }
    Subspace::from_independent(ring, d * d, sys.nullspace())
}

/// `{x ↦ z x + η(x)}` with `z` and `η` taking values in `center`.
pub fn proper_linear_space(alg: &AlgebraSpec, center: &Subspace) -> Subspace {
    let ring = alg.ring;
    let d = alg.dim;
    let mut gens = Vec::new();
    for z in center.basis() {
        let mut v = ring.zeros(d * d);
        for i in 0..d {
            let img = alg.mul(z, &alg.basis(i));
            v[i * d..(i + 1) * d].clone_from_slice(&img);
        }
        gens.push(v);
    }
    for i in 0..d {
        for z in center.basis() {
            let mut v = ring.zeros(d * d);
            v[i * d..(i + 1) * d].clone_from_slice(z);
            gens.push(v);
        }
    }
    Subspace::span(ring, d * d, &gens)
}

/// Every commuting linear map of `alg` is of the form `z x + η(x)` with central `z`, `η`.
pub fn check_all_commuting_proper(alg: &AlgebraSpec, center: &Subspace) -> bool {
    proper_linear_space(alg, center).contains_subspace(&commuting_linear_space(alg))
}

/// A point where `[[x², y], [x, y]] ≠ 0`, and the monomial that exposed it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityWitness {
    pub x_monomial: [usize; 3],
    pub y_monomial: [usize; 2],
    pub x: Vec<Scalar>,
    pub y: Vec<Scalar>,
    pub value: Vec<Scalar>,
}

fn distinct_perms3(m: [usize; 3]) -> Vec<[usize; 3]> {
    let [a, b, c] = m;
    let mut out = vec![[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]];
    out.sort_unstable();
    out.dedup();
    out
}

fn identity_value(g: &Gma, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    g.commutator(&g.commutator(&g.square(x), y), &g.commutator(x, y))
}

/// Decides `[[x², y], [x, y]] ≡ 0` by scanning monomial coefficients
/// `x_a x_b x_c y_d y_e` in lexicographic order.
pub fn check_commutator_square_identity(g: &Gma) -> Verdict<IdentityWitness> {
    let d = g.dim();
    let ring = g.ring();
    let prod: Vec<Vec<Scalar>> = (0..d * d).map(|ij| g.basis_product_dense(ij / d, ij % d)).collect();
    let comm: Vec<Vec<Scalar>> = (0..d * d).map(|ij| g.basis_commutator(ij / d, ij % d)).collect();
    let right_mul = |u: &[Scalar], r: usize| {
        let mut out = ring.zeros(d);
        for (k, uk) in u.iter().enumerate() {
            if !uk.is_zero() {
                crate::ring::axpy(&mut out, uk, &prod[k * d + r]);
            }
        }
        out
    };
    let left_mul = |r: usize, u: &[Scalar]| {
        let mut out = ring.zeros(d);
        for (k, uk) in u.iter().enumerate() {
            if !uk.is_zero() {
                crate::ring::axpy(&mut out, uk, &prod[r * d + k]);
            }
        }
        out
    };
    for a in 0..d {
        for b in a..d {
            for c in b..d {
                let xs = distinct_perms3([a, b, c]);
                for dd in 0..d {
                    for e in dd..d {
                        let ys: Vec<[usize; 2]> = if dd == e { vec![[dd, e]] } else { vec![[dd, e], [e, dd]] };
                        let mut coeff = ring.zeros(d);
                        for [p, q, s] in &xs {
                            let u = &prod[p * d + q];
                            for [r, t] in &ys {
                                // [[e_p e_q, e_r], [e_s, e_t]]
                                let v = vec_sub(&right_mul(u, *r), &left_mul(*r, u));
                                let w = &comm[s * d + t];
                                let term = g.commutator(&v, w);
                                coeff = crate::ring::vec_add(&coeff, &term);
                            }
                        }
                        if !is_zero_vec(&coeff) {
                            let w = identity_witness(g, [a, b, c], [dd, e]);
                            return Verdict::Fails(w);
                        }
                    }
                }
            }
        }
    }
    Verdict::Holds
}

fn identity_witness(g: &Gma, xm: [usize; 3], ym: [usize; 2]) -> IdentityWitness {
    let ring = g.ring();
    let mut xs: Vec<usize> = xm.to_vec();
    xs.dedup();
    let mut ys: Vec<usize> = ym.to_vec();
    ys.dedup();
    let build = |vars: &[usize], vals: &[i64]| {
        let mut v = g.zero();
        for (&i, &c) in vars.iter().zip(vals) {
            v[i] = ring.from_i64(c);
        }
        v
    };
    let n = xs.len() + ys.len();
    let mut digits = vec![1i64; n];
    let mut first = true;
    loop {
        let x = build(&xs, &digits[..xs.len()]);
        let y = build(&ys, &digits[xs.len()..]);
        let value = identity_value(g, &x, &y);
        if !is_zero_vec(&value) {
            return IdentityWitness {
                x_monomial: xm,
                y_monomial: ym,
                x,
                y,
                value,
            };
        }
        // after the all-ones point, sweep the {0,..,3} grid in odometer order
        if first {
            digits.iter_mut().for_each(|v| *v = 0);
            first = false;
            continue;
        }
        let mut pos = n;
        loop {
            assert!(pos > 0, "nonzero coefficient without a nonzero grid point");
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < 4 {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Largest subspace `S ⊆ Z(G)` with `S ∘ G ⊆ S`, by the decreasing fixpoint
/// `S_{t+1} = {s ∈ S_t : s ∘ e_i ∈ S_t for all i}`.
pub fn central_jordan_radical(g: &Gma) -> Subspace {
    let ring = g.ring();
    let d = g.dim();
    let mut s = g.center().z_g.clone();
    loop {
        if s.dim() == 0 {
            return s;
        }
        let q = d - s.dim();
        let mut sys = Matrix::zeros(ring, d * q, s.dim());
        for (l, b) in s.basis().iter().enumerate() {
            for i in 0..d {
                let proj = s.project_quotient(&g.jordan(b, &g.basis(i)));
                for (r, x) in proj.into_iter().enumerate() {
                    sys.set(i * q + r, l, x);
                }
            }
        }
        let kept: Vec<Vec<Scalar>> = sys.nullspace().iter().map(|c| s.combine(c)).collect();
        if kept.len() == s.dim() {
            return s;
        }
        s = Subspace::from_independent(ring, d, kept);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builders::{coordinatewise, full_matrix, matrix_algebra, upper_triangular, upper_triangular_algebra};
    use crate::algebra::Tensor3;

    fn f5() -> Ring {
        Ring::PrimeField(5)
    }

    #[test]
    fn faithful_full_matrix() {
        let f = check_faithful(&full_matrix(3, 1, f5()).unwrap());
        assert!(f.left && f.right);
    }

    #[test]
    fn zero_actions_are_not_faithful() {
        let ring = f5();
        let mut ctx = coordinatewise(ring);
        ctx.m.left = Tensor3::zeros(ring, (2, 2, 2));
        let f = check_faithful(&ctx);
        assert!(!f.left);
        assert!(f.left_witness.is_some());
    }

    #[test]
    fn loyalty_by_enumeration() {
        let opts = LoyaltyOptions::default();
        assert_eq!(check_loyal(&full_matrix(3, 1, f5()).unwrap(), &opts), Loyalty::Loyal);
        assert_eq!(check_loyal(&upper_triangular(3, 1, f5()).unwrap(), &opts), Loyalty::Loyal);
        let ring = f5();
        let v = |a: i64, b: i64| vec![ring.from_i64(a), ring.from_i64(b)];
        assert_eq!(
            check_loyal(&coordinatewise(ring), &opts),
            Loyalty::NotLoyal { a: v(1, 0), b: v(0, 1) }
        );
        assert!(matches!(
            check_loyal(&coordinatewise(Ring::Rational), &opts),
            Loyalty::Unknown(_)
        ));
        let tight = LoyaltyOptions { bound: 3, prime_peirce: false };
        assert!(matches!(check_loyal(&coordinatewise(ring), &tight), Loyalty::Unknown(_)));
    }

    #[test]
    fn projective_enumeration_order() {
        let ring = f5();
        let pts: Vec<Vec<Scalar>> = ProjectivePoints::new(ring, 5, 2).collect();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], vec![ring.one(), ring.zero()]);
        assert_eq!(pts[5], vec![ring.zero(), ring.one()]);
    }

    #[test]
    fn commuting_maps_of_m2() {
        let m2 = matrix_algebra(f5(), 2);
        let space = commuting_linear_space(&m2);
        assert_eq!(space.dim(), 5);
        assert!(check_all_commuting_proper(&m2, &m2.center()));
        let t2 = upper_triangular_algebra(f5(), 2);
        assert!(check_all_commuting_proper(&t2, &t2.center()));
        let one = AlgebraSpec::scalars(f5());
        assert_eq!(commuting_linear_space(&one).dim(), 1);
    }

    #[test]
    fn identity_dichotomy_small() {
        let g = Gma::assemble(upper_triangular(2, 1, f5()).unwrap()).unwrap();
        assert!(check_commutator_square_identity(&g).holds());
        let g = Gma::assemble(full_matrix(3, 1, f5()).unwrap()).unwrap();
        match check_commutator_square_identity(&g) {
            Verdict::Fails(w) => assert_eq!(identity_value(&g, &w.x, &w.y), w.value),
            Verdict::Holds => panic!("identity must fail on M3"),
        }
    }

    #[test]
    fn jordan_radical_vanishes() {
        let g = Gma::assemble(full_matrix(3, 1, f5()).unwrap()).unwrap();
        assert_eq!(central_jordan_radical(&g).dim(), 0);
    }
}
