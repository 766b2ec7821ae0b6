use proptest::prelude::*;

use gmalg_core::algebra::builders::{full_matrix, upper_triangular, MatrixLayout};
use gmalg_core::algebra::{Gma, MoritaContext};
use gmalg_core::decompose::{
    add_random_skew, decompose_lie_triple_iso, random_lie_triple_iso, solve_proper_form, LieShape, ProperTraceForm,
};
use gmalg_core::format;
use gmalg_core::polymap::{is_centralizing_trace, BilinearMapRep, TraceMap};
use gmalg_core::ring::{is_zero_vec, Matrix, Ring, Scalar};
use gmalg_core::rng::Rng;

fn ring_strategy() -> impl Strategy<Value = Ring> {
    prop_oneof![
        Just(Ring::Rational),
        Just(Ring::PrimeField(5)),
        Just(Ring::PrimeField(7)),
        Just(Ring::PrimeField(101)),
    ]
}

fn scalar(ring: Ring) -> impl Strategy<Value = Scalar> {
    (-50i64..50, 1i64..12).prop_map(move |(n, d)| match ring {
        Ring::Rational => ring.from_ratio(n, d),
        Ring::PrimeField(p) if d as u64 % p == 0 => ring.from_i64(n),
        _ => ring.from_ratio(n, d),
    })
}

fn matrix(ring: Ring, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(scalar(ring), cols), rows)
        .prop_map(move |r| Matrix::from_rows(ring, cols, r))
}

fn ring_and_matrix() -> impl Strategy<Value = Matrix> {
    (ring_strategy(), 1usize..6, 1usize..6).prop_flat_map(|(r, m, n)| matrix(r, m, n))
}

fn small_context() -> impl Strategy<Value = MoritaContext> {
    (prop::bool::ANY, 2usize..4, prop::bool::ANY).prop_map(|(full, n, rational)| {
        let ring = if rational { Ring::Rational } else { Ring::PrimeField(5) };
        if full {
            full_matrix(n, 1, ring).unwrap()
        } else {
            upper_triangular(n, 1, ring).unwrap()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_field_laws(ring in ring_strategy(), seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let (a, b, c) = (rng.scalar(ring), rng.scalar(ring), rng.scalar(ring));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, ring.zero());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn ring_text_round_trip((ring, v) in ring_strategy().prop_flat_map(|r| (Just(r), scalar(r)))) {
        prop_assert_eq!(ring.parse_scalar(&v.to_string()).unwrap(), v);
    }

    #[test]
    fn matrix_rank_nullity(m in ring_and_matrix()) {
        let null = m.nullspace();
        prop_assert_eq!(m.rank() + null.len(), m.cols());
        for v in &null {
            prop_assert!(is_zero_vec(&m.mul_vec(v)));
        }
        // reduced echelon form is idempotent
        let r = m.rref();
        let again = r.matrix.rref();
        prop_assert_eq!(&again.matrix, &r.matrix);
        prop_assert_eq!(again.pivots, r.pivots);
    }

    #[test]
    fn matrix_solve_recovers_consistent_rhs(m in ring_and_matrix(), seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let x = rng.vector(m.ring(), m.cols());
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("b lies in the column space");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn context_documents_round_trip(ctx in small_context()) {
        let text = format::print_context(&ctx);
        let back = format::parse_context(&text).unwrap();
        prop_assert_eq!(format::print_context(&back), text);
        prop_assert_eq!(back, ctx);
    }

    #[test]
    fn trace_of_symmetrization_matches(ctx in small_context(), seed in any::<u64>()) {
        let g = Gma::assemble(ctx).unwrap();
        let mut rng = Rng::new(seed);
        let q = add_random_skew(&BilinearMapRep::product(&g), &mut rng);
        let t = TraceMap::from_bilinear(&q);
        for _ in 0..5 {
            let x = rng.vector(g.ring(), g.dim());
            prop_assert_eq!(t.eval(&x), q.apply(&x, &x));
        }
    }

    #[test]
    fn center_elements_commute(ctx in small_context(), seed in any::<u64>()) {
        let g = Gma::assemble(ctx).unwrap();
        let mut rng = Rng::new(seed);
        let c = g.center();
        let z = c.z_g.combine(&rng.vector(g.ring(), c.dim()));
        let x = rng.vector(g.ring(), g.dim());
        prop_assert!(is_zero_vec(&g.commutator(&z, &x)));
    }

    #[test]
    fn proper_forms_are_centralizing_and_solvable(ctx in small_context(), seed in any::<u64>()) {
        let g = Gma::assemble(ctx).unwrap();
        let mut rng = Rng::new(seed);
        let form = ProperTraceForm::random(&g, &mut rng);
        let t = form.reconstruct(&g);
        prop_assert!(is_centralizing_trace(&t, &g).holds());
        let solved = solve_proper_form(&g, &t).expect("proper traces solve");
        prop_assert_eq!(solved.reconstruct(&g), t);
        prop_assert!(solved.centrality_defect(&g).is_none());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn conjugations_of_m3_split_with_positive_sign(seed in any::<u64>(), shift in 0i64..2) {
        let f5 = Ring::PrimeField(5);
        let g = Gma::assemble(full_matrix(3, 1, f5).unwrap()).unwrap();
        let shape = if shift == 0 { LieShape::Conjugation } else { LieShape::ConjugationTraceShift(shift) };
        let (l, truth) = random_lie_triple_iso(&MatrixLayout::full(3, 1), f5, seed, shape).unwrap();
        let d = decompose_lie_triple_iso(&l, &g, &g).unwrap();
        prop_assert_eq!(d.lambda, 1);
        prop_assert_eq!(d.m, truth.m);
        prop_assert_eq!(d.n, truth.n);
    }

    #[test]
    fn rng_streams_are_reproducible(seed in any::<u64>()) {
        let mut a = Rng::new(seed);
        let mut b = Rng::new(seed);
        for _ in 0..16 {
            prop_assert_eq!(a.next_u64(), b.next_u64());
        }
    }
}
