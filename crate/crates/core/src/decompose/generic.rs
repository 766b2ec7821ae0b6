use super::ProperTraceForm;
use crate::algebra::Gma;
use crate::polymap::{pairs, LinearMapRep, TraceMap};
use crate::ring::{axpy, vec_add, Matrix, Scalar};

/// Canonical `(z, μ, ν)` with `T = z x² + μ(x) x + ν(x)`, or `None` when no
/// proper form exists.
///
/// The monomial coefficients of `T − z x² − μ(x) x` must vanish modulo Z(G);
/// that system in the center coordinates of `z` and `μ(e_i)` is solved with
/// free variables zero, and `ν` is the central remainder.
pub fn solve_proper_form(g: &Gma, t: &TraceMap) -> Option<ProperTraceForm> {
    solve(g, t, None)
}

/// As [`solve_proper_form`] with `z` prescribed; `z` must be central.
pub fn solve_proper_form_fixed_z(g: &Gma, t: &TraceMap, z: &[Scalar]) -> Option<ProperTraceForm> {
    assert!(g.is_central(z), "prescribed z must be central");
    solve(g, t, Some(z))
}

// z (e_a e_b + e_b e_a), or z e_a² on the diagonal: the coefficient of x_a x_b in z x²
fn square_coefficient(g: &Gma, z: &[Scalar], a: usize, b: usize) -> Vec<Scalar> {
    let mut prod = g.basis_product_dense(a, b);
    if a != b {
        prod = vec_add(&prod, &g.basis_product_dense(b, a));
    }
    g.mul(z, &prod)
}

fn solve(g: &Gma, t: &TraceMap, fixed_z: Option<&[Scalar]>) -> Option<ProperTraceForm> {
    let ring = g.ring();
    let d = g.dim();
    assert_eq!((t.dim(), t.dst_dim()), (d, d), "trace shape mismatch");
    let c = g.center();
    let zb = c.basis();
    let r = zb.len();
    let q = c.z_g.quotient_matrix();
    let w = q.rows();
    // z_t e_j
    let zprod: Vec<Vec<Vec<Scalar>>> = zb
        .iter()
        .map(|z| (0..d).map(|j| g.mul(z, &g.basis(j))).collect())
        .collect();
    let zeta_cols = if fixed_z.is_some() { 0 } else { r };
    let cols = zeta_cols + d * r;
    let prs = pairs(d);
    let mut sys = Matrix::zeros(ring, prs.len() * w, cols);
    let mut rhs = Vec::with_capacity(prs.len() * w);
    let place = |sys: &mut Matrix, row0: usize, col: usize, v: &[Scalar]| {
        for (k, x) in q.mul_vec(v).iter().enumerate() {
            if !x.is_zero() {
                sys.add_to(row0 + k, col, x);
            }
        }
    };
    for (p, &(a, b)) in prs.iter().enumerate() {
        let row0 = p * w;
        let mut target = t.coefficient(a, b);
        match fixed_z {
            Some(z) => axpy(&mut target, &-ring.one(), &square_coefficient(g, z, a, b)),
            None => {
                for (k, z) in zb.iter().enumerate() {
                    place(&mut sys, row0, k, &square_coefficient(g, z, a, b));
                }
            }
        }
        for k in 0..r {
            // μ(e_a) e_b + μ(e_b) e_a, once on the diagonal
            place(&mut sys, row0, zeta_cols + a * r + k, &zprod[k][b]);
            if a != b {
                place(&mut sys, row0, zeta_cols + b * r + k, &zprod[k][a]);
            }
        }
        rhs.extend(q.mul_vec(&target));
    }
    let sol = sys.solve(&rhs)?;
    let combine = |coords: &[Scalar]| {
        let mut v = g.zero();
        for (x, z) in coords.iter().zip(zb) {
            axpy(&mut v, x, z);
        }
        v
    };
    let z = match fixed_z {
        Some(z) => z.to_vec(),
        None => combine(&sol[..r]),
    };
    let mu_cols: Vec<Vec<Scalar>> = (0..d)
        .map(|i| combine(&sol[zeta_cols + i * r..zeta_cols + (i + 1) * r]))
        .collect();
    let mu = LinearMapRep::new(Matrix::from_columns(ring, d, &mu_cols));
    let partial = ProperTraceForm {
        z,
        mu,
        nu: TraceMap::zero(ring, d, d),
    };
    let nu = t.sub(&partial.reconstruct(g));
    let form = ProperTraceForm { nu, ..partial };
    assert_eq!(form.reconstruct(g), *t, "proper form does not reconstruct the trace");
    assert_eq!(form.centrality_defect(g), None, "solved proper form is not central");
    Some(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builders::{full_matrix, upper_triangular};
    use crate::polymap::BilinearMapRep;
    use crate::ring::Ring;

    #[test]
    fn product_trace_is_z_one() {
        let f5 = Ring::PrimeField(5);
        let g = Gma::assemble(full_matrix(3, 1, f5).unwrap()).unwrap();
        let t = TraceMap::from_bilinear(&BilinearMapRep::product(&g));
        let form = solve_proper_form(&g, &t).unwrap();
        assert_eq!(form.z, g.unit());
        assert!(form.mu.matrix.is_zero());
        assert!(form.nu.is_zero());
    }

    #[test]
    fn non_proper_trace_has_no_form() {
        // T(x) = E11 x² is not proper on M2
        let f5 = Ring::PrimeField(5);
        let g = Gma::assemble(full_matrix(2, 1, f5).unwrap()).unwrap();
        let e11 = g.basis(0);
        let s = pairs(4)
            .into_iter()
            .map(|(a, b)| {
                let mut v = vec_add(&g.basis_product_dense(a, b), &g.basis_product_dense(b, a));
                v = crate::ring::vec_scale(&f5.half(), &v);
                g.mul(&e11, &v)
            })
            .collect();
        let t = TraceMap::from_symmetric(f5, 4, 4, s);
        assert!(solve_proper_form(&g, &t).is_none());
    }

    #[test]
    fn fixed_z_on_triangular() {
        let f5 = Ring::PrimeField(5);
        let g = Gma::assemble(upper_triangular(3, 1, f5).unwrap()).unwrap();
        let t = TraceMap::from_bilinear(&BilinearMapRep::product(&g));
        let neg = crate::ring::vec_scale(&-f5.one(), g.unit());
        let form = solve_proper_form_fixed_z(&g, &t, g.unit()).unwrap();
        assert!(form.mu.matrix.is_zero());
        assert!(solve_proper_form_fixed_z(&g, &t, &neg).is_none());
    }
}
