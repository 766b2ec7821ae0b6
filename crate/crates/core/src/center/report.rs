use super::checks::{check_all_commuting_proper, check_faithful, check_loyal, Faithfulness, Loyalty, LoyaltyOptions};
use crate::algebra::Gma;
use crate::ring::{Matrix, Scalar};
use crate::rng::Rng;

/// Which set of sufficient conditions for properness of centralizing traces holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    /// Commuting maps of A and B proper, π_A(Z(G)) = Z(A) ≠ A, π_B(Z(G)) = Z(B) ≠ B, M loyal.
    LoyalNoncommutativeCorners,
    /// B noncommutative, G and B central, commuting maps of B proper, torsion-free M,
    /// and some `m0 b0` independent of `m0`.
    CentralWithIndependentPair,
}

impl Route {
    pub fn tag(&self) -> &'static str {
        match self {
            Route::LoyalNoncommutativeCorners => "loyal-noncommutative-corners",
            Route::CentralWithIndependentPair => "central-independent-pair",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub loyalty: LoyaltyOptions,
    pub seed: u64,
    pub random_pairs: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            loyalty: LoyaltyOptions::default(),
            seed: 0,
            random_pairs: 1000,
        }
    }
}

/// Every hypothesis entry, each reproducible by rerunning its check.
#[derive(Clone, Debug)]
pub struct HypothesisReport {
    pub morita_ok: bool,
    pub faithful: Faithfulness,
    pub loyal: Loyalty,
    pub dim_center: usize,
    pub z_a_eq_pi_a: bool,
    pub z_a_ne_a: bool,
    pub z_b_eq_pi_b: bool,
    pub z_b_ne_b: bool,
    pub commuting_proper_on_a: bool,
    pub commuting_proper_on_b: bool,
    pub a_noncommutative: bool,
    pub b_noncommutative: bool,
    pub central_over_r: bool,
    pub b_central: bool,
    pub scalar_torsion_free: bool,
    pub independent_pair: Option<(Vec<Scalar>, Vec<Scalar>)>,
    pub two_torsionfree: bool,
    pub phi_available: bool,
    pub routes: Vec<Route>,
}

/// A pair `(m0, b0)` with `m0 b0` and `m0` linearly independent: basis pairs
/// first, then `random_pairs` seeded random pairs.
pub fn find_independent_pair(g: &Gma, seed: u64, random_pairs: usize) -> Option<(Vec<Scalar>, Vec<Scalar>)> {
    let ctx = g.context();
    let ring = g.ring();
    let [_, dm, _, db] = ctx.dims();
    if dm == 0 || db == 0 {
        return None;
    }
    let independent = |m: &[Scalar], b: &[Scalar]| {
        let mb = ctx.m.act_right(m, b);
        Matrix::from_rows(ring, dm, vec![m.to_vec(), mb]).rank() == 2
    };
    for j in 0..dm {
        let m = ring.unit_vector(dm, j);
        for k in 0..db {
            let b = ring.unit_vector(db, k);
            if independent(&m, &b) {
                return Some((m, b));
            }
        }
    }
    let mut rng = Rng::new(seed);
    for _ in 0..random_pairs {
        let m = rng.vector(ring, dm);
        let b = rng.vector(ring, db);
        if independent(&m, &b) {
            return Some((m, b));
        }
    }
    None
}

impl HypothesisReport {
    pub fn compute(g: &Gma, opts: &ReportOptions) -> HypothesisReport {
        let ctx = g.context();
        let c = g.center();
        let faithful = check_faithful(ctx);
        let loyal = check_loyal(ctx, &opts.loyalty);
        let z_a_eq_pi_a = c.z_a.same_as(&c.pi_a);
        let z_b_eq_pi_b = c.z_b.same_as(&c.pi_b);
        let z_a_ne_a = !c.z_a.is_full();
        let z_b_ne_b = !c.z_b.is_full();
        let commuting_proper_on_a = check_all_commuting_proper(&ctx.a, &c.z_a);
        let commuting_proper_on_b = check_all_commuting_proper(&ctx.b, &c.z_b);
        let central_over_r = c.dim() == 1 && c.contains(g.unit());
        let b_central = c.z_b.dim() == 1 && c.z_b.contains(&ctx.b.unit);
        let independent_pair = find_independent_pair(g, opts.seed, opts.random_pairs);
        let mut report = HypothesisReport {
            morita_ok: true,
            faithful,
            loyal,
            dim_center: c.dim(),
            z_a_eq_pi_a,
            z_a_ne_a,
            z_b_eq_pi_b,
            z_b_ne_b,
            commuting_proper_on_a,
            commuting_proper_on_b,
            a_noncommutative: !ctx.a.is_commutative(),
            b_noncommutative: !ctx.b.is_commutative(),
            central_over_r,
            b_central,
            // over a field r m = 0 forces r = 0 or m = 0
            scalar_torsion_free: true,
            independent_pair,
            // every supported ring inverts 2
            two_torsionfree: true,
            phi_available: c.phi().is_some(),
            routes: Vec::new(),
        };
        report.routes = report.derive_routes();
        report
    }

    fn derive_routes(&self) -> Vec<Route> {
        let mut routes = Vec::new();
        let standing = self.faithful.left && self.faithful.right && self.two_torsionfree;
        if standing
            && self.commuting_proper_on_a
            && self.commuting_proper_on_b
            && self.z_a_eq_pi_a
            && self.z_a_ne_a
            && self.z_b_eq_pi_b
            && self.z_b_ne_b
            && self.loyal.is_loyal()
        {
            routes.push(Route::LoyalNoncommutativeCorners);
        }
        if standing
            && self.b_noncommutative
            && self.central_over_r
            && self.b_central
            && self.commuting_proper_on_b
            && self.scalar_torsion_free
            && self.independent_pair.is_some()
        {
            routes.push(Route::CentralWithIndependentPair);
        }
        routes
    }

    pub fn route(&self) -> Option<Route> {
        self.routes.first().copied()
    }

    /// Either corner noncommutative, as required for Lie triple splitting.
    pub fn some_corner_noncommutative(&self) -> bool {
        self.a_noncommutative || self.b_noncommutative
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builders::{full_matrix, upper_triangular};
    use crate::ring::Ring;

    #[test]
    fn t3_takes_the_central_route() {
        let f5 = Ring::PrimeField(5);
        let g = Gma::assemble(upper_triangular(3, 1, f5).unwrap()).unwrap();
        let r = HypothesisReport::compute(&g, &ReportOptions::default());
        assert!(!r.z_a_ne_a);
        assert_eq!(r.routes, vec![Route::CentralWithIndependentPair]);
        let (m0, b0) = r.independent_pair.unwrap();
        assert_eq!(m0, vec![f5.one(), f5.zero()]);
        // E12 of T2 in the basis E11, E12, E22
        assert_eq!(b0, vec![f5.zero(), f5.one(), f5.zero()]);
    }

    #[test]
    fn t2_fails_both_corner_clauses() {
        let f5 = Ring::PrimeField(5);
        let g = Gma::assemble(upper_triangular(2, 1, f5).unwrap()).unwrap();
        let r = HypothesisReport::compute(&g, &ReportOptions::default());
        assert!(!r.z_a_ne_a && !r.z_b_ne_b);
        assert!(r.routes.is_empty());
    }

    #[test]
    fn m4_takes_the_loyal_route() {
        let f5 = Ring::PrimeField(5);
        let g = Gma::assemble(full_matrix(4, 2, f5).unwrap()).unwrap();
        let r = HypothesisReport::compute(&g, &ReportOptions::default());
        assert!(r.routes.contains(&Route::LoyalNoncommutativeCorners));
    }
}
