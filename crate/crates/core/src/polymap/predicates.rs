use super::{pairs, sorted_triples, split_triple, LinearMapRep, TraceMap, Verdict};
use crate::algebra::Gma;
use crate::ring::{axpy, is_zero_vec, Matrix, Scalar};

/// Whether a defect must vanish or only lie in Z(G).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Commuting,
    Centralizing,
}

impl Mode {
    pub fn tag(&self) -> &'static str {
        match self {
            Mode::Commuting => "commuting",
            Mode::Centralizing => "centralizing",
        }
    }
}

/// A point where a defect polynomial is nonzero (modulo Z(G) when centralizing),
/// found from the lexicographically least failing monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyWitness {
    pub monomial: Vec<usize>,
    pub point: Vec<Scalar>,
    pub value: Vec<Scalar>,
}

/// Rows applied to a defect before testing for zero.
fn projection(g: &Gma, mode: Mode) -> Option<&Matrix> {
    match mode {
        Mode::Commuting => None,
        Mode::Centralizing => Some(g.center().z_g.quotient_matrix()),
    }
}

fn project(p: Option<&Matrix>, v: &[Scalar]) -> Vec<Scalar> {
    match p {
        None => v.to_vec(),
        Some(m) => m.mul_vec(v),
    }
}

/// `[e_k, e_t]` for all `k, t`, indexed `k·d + t`.
fn commutator_table(g: &Gma) -> Vec<Vec<Scalar>> {
    let d = g.dim();
    (0..d * d).map(|kt| g.basis_commutator(kt / d, kt % d)).collect()
}

/// `[w, e_t]` from the table.
fn bracket_basis(table: &[Vec<Scalar>], d: usize, w: &[Scalar], t: usize) -> Vec<Scalar> {
    let mut out = vec![w[0].ring().zero(); d];
    for (k, wk) in w.iter().enumerate() {
        if !wk.is_zero() {
            axpy(&mut out, wk, &table[k * d + t]);
        }
    }
    out
}

/// Searches the support of a failing monomial for a point where `value` is
/// nonzero: first the sum of the basis vectors, then the `{0,1,2,3}` grid. The
/// grid always succeeds for polynomials of degree at most 3 in each variable.
fn find_point(
    g: &Gma,
    monomial: &[usize],
    value: &dyn Fn(&[Scalar]) -> Vec<Scalar>,
) -> PolyWitness {
    let ring = g.ring();
    let mut support = monomial.to_vec();
    support.dedup();
    let point_of = |digits: &[i64]| {
        let mut x = g.zero();
        for (&i, &c) in support.iter().zip(digits) {
            x[i] = ring.from_i64(c);
        }
        x
    };
    let mut candidates = vec![vec![1i64; support.len()]];
    let k = support.len() as u32;
    for code in 0..4i64.pow(k) {
        let digits = (0..k).rev().map(|p| (code / 4i64.pow(p)) % 4).collect();
        candidates.push(digits);
    }
    for digits in candidates {
        let x = point_of(&digits);
        let v = value(&x);
        if !is_zero_vec(&v) {
            return PolyWitness {
                monomial: monomial.to_vec(),
                point: x,
                value: v,
            };
        }
    }
    panic!("nonzero coefficient at {monomial:?} without a nonzero grid point");
}

fn linear_verdict(f: &LinearMapRep, g: &Gma, mode: Mode) -> Verdict<PolyWitness> {
    let d = g.dim();
    assert_eq!((f.src_dim(), f.dst_dim()), (d, d), "linear map shape mismatch");
    let proj = projection(g, mode);
    let table = commutator_table(g);
    let images: Vec<Vec<Scalar>> = (0..d).map(|i| f.image_of_basis(i)).collect();
    for (i, j) in pairs(d) {
        let mut c = bracket_basis(&table, d, &images[i], j);
        if i != j {
            c = crate::ring::vec_add(&c, &bracket_basis(&table, d, &images[j], i));
        }
        if !is_zero_vec(&project(proj, &c)) {
            let value = |x: &[Scalar]| project(proj, &g.commutator(&f.apply(x), x));
            return Verdict::Fails(find_point(g, &[i, j], &value));
        }
    }
    Verdict::Holds
}

/// `[f(x), x] = 0` for all `x`.
pub fn is_commuting_linear(f: &LinearMapRep, g: &Gma) -> Verdict<PolyWitness> {
    linear_verdict(f, g, Mode::Commuting)
}

/// `[f(x), x] ∈ Z(G)` for all `x`.
pub fn is_centralizing_linear(f: &LinearMapRep, g: &Gma) -> Verdict<PolyWitness> {
    linear_verdict(f, g, Mode::Centralizing)
}

/// Monomial coefficients of `x ↦ [T(x), x]` over sorted triples, projected
/// according to `mode`, stopping at the first nonzero one when `stop_early`.
pub fn trace_defect(t: &TraceMap, g: &Gma, mode: Mode, stop_early: bool) -> Vec<([usize; 3], Vec<Scalar>)> {
    let d = g.dim();
    assert_eq!((t.dim(), t.dst_dim()), (d, d), "trace shape mismatch");
    let proj = projection(g, mode);
    let table = commutator_table(g);
    let mut out = Vec::new();
    for m in sorted_triples(d) {
        let mut c = g.zero();
        for (e, [i, j]) in split_triple(m) {
            let w = t.coefficient(i, j);
            if is_zero_vec(&w) {
                continue;
            }
            c = crate::ring::vec_add(&c, &bracket_basis(&table, d, &w, e));
        }
        let c = project(proj, &c);
        if !is_zero_vec(&c) {
            out.push((m, c));
            if stop_early {
                break;
            }
        }
    }
    out
}

fn trace_verdict(t: &TraceMap, g: &Gma, mode: Mode) -> Verdict<PolyWitness> {
    let defect = trace_defect(t, g, mode, true);
    match defect.first() {
        None => Verdict::Holds,
        Some((m, _)) => {
            let proj = projection(g, mode);
            let value = |x: &[Scalar]| project(proj, &g.commutator(&t.eval(x), x));
            Verdict::Fails(find_point(g, m, &value))
        }
    }
}

/// `[T(x), x] = 0` for all `x`.
pub fn is_commuting_trace(t: &TraceMap, g: &Gma) -> Verdict<PolyWitness> {
    trace_verdict(t, g, Mode::Commuting)
}

/// `[T(x), x] ∈ Z(G)` for all `x`.
pub fn is_centralizing_trace(t: &TraceMap, g: &Gma) -> Verdict<PolyWitness> {
    trace_verdict(t, g, Mode::Centralizing)
}

/// `m(e_i ∘ e_j) = m(e_i) ∘ m(e_j)` on basis pairs; the witness is `(i, j)`.
pub fn is_jordan_hom(m: &LinearMapRep, g: &Gma, g2: &Gma) -> Verdict<[usize; 2]> {
    let d = g.dim();
    assert_eq!((m.src_dim(), m.dst_dim()), (d, g2.dim()), "map shape mismatch");
    let images: Vec<Vec<Scalar>> = (0..d).map(|i| m.image_of_basis(i)).collect();
    for (i, j) in pairs(d) {
        let lhs = m.apply(&g.jordan(&g.basis(i), &g.basis(j)));
        if lhs != g2.jordan(&images[i], &images[j]) {
            return Verdict::Fails([i, j]);
        }
    }
    Verdict::Holds
}

/// `l([[e_i, e_j], e_k]) = [[l(e_i), l(e_j)], l(e_k)]` on basis triples.
pub fn is_lie_triple_hom(l: &LinearMapRep, g: &Gma, g2: &Gma) -> Verdict<[usize; 3]> {
    let d = g.dim();
    assert_eq!((l.src_dim(), l.dst_dim()), (d, g2.dim()), "map shape mismatch");
    let images: Vec<Vec<Scalar>> = (0..d).map(|i| l.image_of_basis(i)).collect();
    for i in 0..d {
        // [[e_i, e_j], e_k] is antisymmetric in (i, j)
        for j in i + 1..d {
            let c = g.basis_commutator(i, j);
            let c2 = g2.commutator(&images[i], &images[j]);
            for k in 0..d {
                let lhs = l.apply(&g.commutator(&c, &g.basis(k)));
                let rhs = g2.commutator(&c2, &images[k]);
                if lhs != rhs {
                    return Verdict::Fails([i, j, k]);
                }
            }
        }
    }
    Verdict::Holds
}

/// `n([[e_i, e_j], e_k]) = 0` on basis triples.
pub fn vanishes_on_second_commutators(n: &LinearMapRep, g: &Gma) -> Verdict<[usize; 3]> {
    let d = g.dim();
    assert_eq!(n.src_dim(), d, "map shape mismatch");
    for i in 0..d {
        for j in i + 1..d {
            let c = g.basis_commutator(i, j);
            for k in 0..d {
                let v = n.apply(&g.commutator(&c, &g.basis(k)));
                if !is_zero_vec(&v) {
                    return Verdict::Fails([i, j, k]);
                }
            }
        }
    }
    Verdict::Holds
}

/// Every column of `n` lies in Z(G′); the witness is the first offending basis index.
pub fn central_valued(n: &LinearMapRep, g2: &Gma) -> Verdict<usize> {
    for i in 0..n.src_dim() {
        if !g2.is_central(&n.image_of_basis(i)) {
            return Verdict::Fails(i);
        }
    }
    Verdict::Holds
}

/// `[T(x), x]` evaluated directly.
pub fn defect_value(g: &Gma, t: &TraceMap, x: &[Scalar]) -> Vec<Scalar> {
    g.commutator(&t.eval(x), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builders::{full_matrix, upper_triangular, MatrixLayout};
    use crate::polymap::BilinearMapRep;
    use crate::ring::{Matrix, Ring};

    fn m2() -> (Gma, MatrixLayout) {
        let f5 = Ring::PrimeField(5);
        (Gma::assemble(full_matrix(2, 1, f5).unwrap()).unwrap(), MatrixLayout::full(2, 1))
    }

    fn left_mult(g: &Gma, a: &[Scalar]) -> LinearMapRep {
        let cols: Vec<Vec<Scalar>> = (0..g.dim()).map(|i| g.mul(a, &g.basis(i))).collect();
        LinearMapRep::new(Matrix::from_columns(g.ring(), g.dim(), &cols))
    }

    #[test]
    fn identity_commutes() {
        let (g, _) = m2();
        assert!(is_commuting_linear(&LinearMapRep::identity(g.ring(), 4), &g).holds());
    }

    #[test]
    fn left_multiplication_by_e11_fails_with_verified_witness() {
        let (g, lay) = m2();
        let f = left_mult(&g, &g.basis(lay.index(0, 0)));
        let w = is_commuting_linear(&f, &g).witness().cloned().unwrap();
        assert_eq!(w.value, g.commutator(&f.apply(&w.point), &w.point));
        assert!(!is_zero_vec(&w.value));
        // least failing monomial is x_{E11} x_{E21}
        assert_eq!(w.monomial, vec![lay.index(0, 0), lay.index(1, 0)]);
        assert!(!is_centralizing_linear(&f, &g).holds());
    }

    #[test]
    fn trace_shift_commutes_on_m3() {
        let f5 = Ring::PrimeField(5);
        let g = Gma::assemble(full_matrix(3, 1, f5).unwrap()).unwrap();
        let lay = MatrixLayout::full(3, 1);
        let tr = lay.trace_functional(f5);
        let mut m = Matrix::identity(f5, 9);
        for (i, t) in tr.iter().enumerate() {
            for (r, u) in g.unit().iter().enumerate() {
                m.add_to(r, i, &(t * u));
            }
        }
        assert!(is_commuting_linear(&LinearMapRep::new(m), &g).holds());
    }

    #[test]
    fn product_trace_commutes() {
        let f5 = Ring::PrimeField(5);
        let g = Gma::assemble(upper_triangular(3, 1, f5).unwrap()).unwrap();
        let t = TraceMap::from_bilinear(&BilinearMapRep::product(&g));
        assert!(is_commuting_trace(&t, &g).holds());
    }

    #[test]
    fn e11_times_product_is_not_centralizing() {
        let (g, lay) = m2();
        let e11 = g.basis(lay.index(0, 0));
        let d = g.dim();
        let mut tensor = crate::algebra::Tensor3::zeros(g.ring(), (d, d, d));
        for i in 0..d {
            for j in 0..d {
                tensor.set_cell(i, j, &g.mul(&e11, &g.basis_product_dense(i, j)));
            }
        }
        let t = TraceMap::from_bilinear(&BilinearMapRep::new(tensor));
        let w = is_centralizing_trace(&t, &g).witness().cloned().unwrap();
        let raw = defect_value(&g, &t, &w.point);
        assert!(!g.is_central(&raw));
    }

    #[test]
    fn jordan_and_lie_triple_checks() {
        let f5 = Ring::PrimeField(5);
        let g = Gma::assemble(full_matrix(3, 1, f5).unwrap()).unwrap();
        let lay = MatrixLayout::full(3, 1);
        let t = LinearMapRep::new(lay.transpose_map(f5).unwrap());
        assert!(is_jordan_hom(&t, &g, &g).holds());
        let neg = LinearMapRep::new(t.matrix.scale(&f5.from_i64(-1)));
        assert!(is_lie_triple_hom(&neg, &g, &g).holds());
        let two = LinearMapRep::new(Matrix::identity(f5, 9).scale(&f5.from_i64(2)));
        assert!(!is_jordan_hom(&two, &g, &g).holds());
        let id = LinearMapRep::identity(f5, 9);
        assert!(is_lie_triple_hom(&id, &g, &g).holds());
        assert!(!vanishes_on_second_commutators(&id, &g).holds());
        let zero = LinearMapRep::new(Matrix::zeros(f5, 9, 9));
        assert!(vanishes_on_second_commutators(&zero, &g).holds());
    }
}
