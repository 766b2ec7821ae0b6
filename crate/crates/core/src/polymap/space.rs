use super::{pair_count, pair_index, sorted_triples, split_triple, Mode, TraceMap};
use crate::algebra::Gma;
use crate::error::{Error, Result};
use crate::ring::{Matrix, Scalar, Subspace};

/// Default bound on the algebra dimension for building constraint systems.
pub const DEFAULT_MAX_DIM: usize = 12;

/// Symmetric tensors whose traces are commuting or centralizing, as a subspace
/// of `ring^{pairs·d}` with coordinate `p·d + o` for pair `p` and output `o`.
#[derive(Clone, Debug)]
pub struct TraceSpace {
    pub mode: Mode,
    pub dim: usize,
    pub constraint_shape: (usize, usize),
    pub subspace: Subspace,
}

impl TraceSpace {
    pub fn basis_traces(&self) -> Vec<TraceMap> {
        let ring = self.subspace.ring();
        self.subspace
            .basis()
            .iter()
            .map(|v| TraceMap::from_vector(ring, self.dim, self.dim, v))
            .collect()
    }

    pub fn contains(&self, t: &TraceMap) -> bool {
        self.subspace.contains(&t.to_vector())
    }
}

/// Nullspace of the linear constraints "every monomial coefficient of
/// `[T(x), x]` vanishes (modulo Z(G) when centralizing)".
pub fn trace_space(g: &Gma, mode: Mode, max_dim: usize) -> Result<TraceSpace> {
    let ring = g.ring();
    let d = g.dim();
    if d > max_dim {
        return Err(Error::SizeBound(format!("algebra dimension {d} exceeds bound {max_dim}")));
    }
    let proj: Option<&Matrix> = match mode {
        Mode::Commuting => None,
        Mode::Centralizing => Some(g.center().z_g.quotient_matrix()),
    };
    let width = proj.map_or(d, |m| m.rows());
    // projected [e_o, e_t]
    let brackets: Vec<Vec<Scalar>> = (0..d * d)
        .map(|ot| {
            let c = g.basis_commutator(ot / d, ot % d);
            proj.map_or(c.clone(), |m| m.mul_vec(&c))
        })
        .collect();
    let triples = sorted_triples(d);
    let cols = pair_count(d) * d;
    let mut sys = Matrix::zeros(ring, triples.len() * width, cols);
    let two = ring.from_i64(2);
    for (row, m) in triples.iter().enumerate() {
        for (t, [i, j]) in split_triple(*m) {
            let p = pair_index(d, i, j);
            let factor = if i == j { ring.one() } else { two.clone() };
            for o in 0..d {
                for (r, x) in brackets[o * d + t].iter().enumerate() {
                    if !x.is_zero() {
                        sys.add_to(row * width + r, p * d + o, &(&factor * x));
                    }
                }
            }
        }
    }
    let shape = (sys.rows(), sys.cols());
    let subspace = Subspace::from_independent(ring, cols, sys.nullspace());
    Ok(TraceSpace {
        mode,
        dim: d,
        constraint_shape: shape,
        subspace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builders::upper_triangular;
    use crate::polymap::{is_commuting_trace, BilinearMapRep};
    use crate::ring::Ring;

    #[test]
    fn t2_space_contains_product_trace() {
        let g = Gma::assemble(upper_triangular(2, 1, Ring::PrimeField(5)).unwrap()).unwrap();
        let space = trace_space(&g, Mode::Centralizing, DEFAULT_MAX_DIM).unwrap();
        let t = TraceMap::from_bilinear(&BilinearMapRep::product(&g));
        assert!(space.contains(&t));
        let comm = trace_space(&g, Mode::Commuting, DEFAULT_MAX_DIM).unwrap();
        for b in comm.basis_traces() {
            assert!(is_commuting_trace(&b, &g).holds());
        }
    }

    #[test]
    fn rational_spaces_match_the_prime_field_dimension() {
        let q = Gma::assemble(upper_triangular(2, 1, Ring::Rational).unwrap()).unwrap();
        let f = Gma::assemble(upper_triangular(2, 1, Ring::PrimeField(5)).unwrap()).unwrap();
        let dq = trace_space(&q, Mode::Centralizing, 12).unwrap().subspace.dim();
        let df = trace_space(&f, Mode::Centralizing, 12).unwrap().subspace.dim();
        assert_eq!(dq, df);
    }

    #[test]
    fn size_bound_rejected() {
        let g = Gma::assemble(upper_triangular(2, 1, Ring::PrimeField(5)).unwrap()).unwrap();
        assert!(matches!(trace_space(&g, Mode::Commuting, 2), Err(Error::SizeBound(_))));
    }
}
