//! Linear, bilinear and quadratic maps on an assembled algebra and the
//! polynomial-identity predicates over them.

mod predicates;
mod space;

pub use predicates::{
    central_valued, defect_value, is_centralizing_linear, is_centralizing_trace, is_commuting_linear,
    is_commuting_trace, is_jordan_hom, is_lie_triple_hom, trace_defect, vanishes_on_second_commutators,
    Mode, PolyWitness,
};
pub use space::{trace_space, TraceSpace, DEFAULT_MAX_DIM};

use crate::algebra::Tensor3;
use crate::error::{Error, Result};
use crate::ring::{axpy, vec_add, Matrix, Ring, Scalar};

/// Result of a decision procedure: the property holds, or a verified witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

pub fn pair_count(d: usize) -> usize {
    d * (d + 1) / 2
}

/// Position of `(i, j)`, `i ≤ j`, in the row-major list of pairs.
pub fn pair_index(d: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < d);
    i * (2 * d - i + 1) / 2 + (j - i)
}

pub fn pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect()
}

/// Multisets `i ≤ j ≤ k` in lexicographic order.
pub fn sorted_triples(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..d {
        for j in i..d {
            for k in j..d {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// Ways to remove one element from a sorted triple: `(removed, remaining sorted pair)`,
/// once per distinct removed value.
pub fn split_triple(m: [usize; 3]) -> Vec<(usize, [usize; 2])> {
    let [a, b, c] = m;
    let mut out = vec![(a, [b, c])];
    if b != a {
        out.push((b, [a, c]));
    }
    if c != b {
        out.push((c, [a, b]));
    }
    out
}

/// A linear map `ring^src → ring^dst`; column `i` is the image of `e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMapRep {
    pub matrix: Matrix,
}

impl LinearMapRep {
    pub fn new(matrix: Matrix) -> LinearMapRep {
        LinearMapRep { matrix }
    }

    pub fn identity(ring: Ring, d: usize) -> LinearMapRep {
        LinearMapRep::new(Matrix::identity(ring, d))
    }

    pub fn src_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn dst_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn ring(&self) -> Ring {
        self.matrix.ring()
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(x)
    }

    pub fn image_of_basis(&self, i: usize) -> Vec<Scalar> {
        self.matrix.column(i)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMapRep) -> LinearMapRep {
        LinearMapRep::new(self.matrix.mul(&other.matrix))
    }

    pub fn check_shape(&self, src: usize, dst: usize) -> Result<()> {
        if self.src_dim() != src || self.dst_dim() != dst {
            return Err(Error::Shape(format!(
                "linear map {}→{} where {src}→{dst} is required",
                self.src_dim(),
                self.dst_dim()
            )));
        }
        Ok(())
    }
}

/// A bilinear map `q(e_i, e_j) = Σ_k t[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMapRep {
    pub tensor: Tensor3,
}

impl BilinearMapRep {
    pub fn new(tensor: Tensor3) -> BilinearMapRep {
        BilinearMapRep { tensor }
    }

    pub fn src_dim(&self) -> usize {
        self.tensor.shape().0
    }

    pub fn dst_dim(&self) -> usize {
        self.tensor.shape().2
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.tensor.apply(x, y)
    }

    pub fn check_shape(&self, d: usize) -> Result<()> {
        let (a, b, c) = self.tensor.shape();
        if (a, b, c) != (d, d, d) {
            return Err(Error::Shape(format!(
                "bilinear map of shape {a}×{b}→{c} on an algebra of dimension {d}"
            )));
        }
        Ok(())
    }

    /// `q(x, y) = x y`.
    pub fn product(g: &crate::algebra::Gma) -> BilinearMapRep {
        BilinearMapRep::new(g.mul_tensor().clone())
    }
}

/// The quadratic map `x ↦ q(x, x)`, stored by the symmetric tensor
/// `s[i][j] = ½(q[i][j] + q[j][i])` indexed by pairs `i ≤ j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceMap {
    ring: Ring,
    dim: usize,
    dst_dim: usize,
    s: Vec<Vec<Scalar>>,
}

impl TraceMap {
    pub fn zero(ring: Ring, dim: usize, dst_dim: usize) -> TraceMap {
        TraceMap {
            ring,
            dim,
            dst_dim,
            s: vec![ring.zeros(dst_dim); pair_count(dim)],
        }
    }

    pub fn from_bilinear(q: &BilinearMapRep) -> TraceMap {
        let (d, d2, dst) = q.tensor.shape();
        assert_eq!(d, d2, "trace needs a bilinear map on one space");
        let ring = q.tensor.ring();
        let half = ring.half();
        let mut t = TraceMap::zero(ring, d, dst);
        for (i, j) in pairs(d) {
            let mut v = q.tensor.cell_dense(i, j);
            if i != j {
                v = crate::ring::vec_scale(&half, &vec_add(&v, &q.tensor.cell_dense(j, i)));
            }
            t.s[pair_index(d, i, j)] = v;
        }
        t
    }

    /// Builds from symmetric values `s(e_i, e_j)`, `i ≤ j`.
    pub fn from_symmetric(ring: Ring, dim: usize, dst_dim: usize, s: Vec<Vec<Scalar>>) -> TraceMap {
        assert_eq!(s.len(), pair_count(dim));
        assert!(s.iter().all(|v| v.len() == dst_dim));
        TraceMap { ring, dim, dst_dim, s }
    }

    /// Inverse of [`TraceMap::to_vector`].
    pub fn from_vector(ring: Ring, dim: usize, dst_dim: usize, v: &[Scalar]) -> TraceMap {
        assert_eq!(v.len(), pair_count(dim) * dst_dim);
        let s = v.chunks(dst_dim).map(|c| c.to_vec()).collect();
        TraceMap { ring, dim, dst_dim, s }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dst_dim(&self) -> usize {
        self.dst_dim
    }

    /// `s(e_i, e_j)` for any order of `i, j`.
    pub fn sym(&self, i: usize, j: usize) -> &[Scalar] {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        &self.s[pair_index(self.dim, a, b)]
    }

    /// Symmetric values in pair order.
    pub fn symmetric_values(&self) -> &[Vec<Scalar>] {
        &self.s
    }

    /// Coefficient of the monomial `x_i x_j` in `q(x, x)`: `s_ii`, or `2 s_ij` for `i < j`.
    pub fn coefficient(&self, i: usize, j: usize) -> Vec<Scalar> {
        let v = self.sym(i, j);
        if i == j {
            v.to_vec()
        } else {
            crate::ring::vec_scale(&self.ring.from_i64(2), v)
        }
    }

    pub fn coefficients(&self) -> Vec<Vec<Scalar>> {
        pairs(self.dim).into_iter().map(|(i, j)| self.coefficient(i, j)).collect()
    }

    /// Symmetric bilinear extension `s(x, y)`.
    pub fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.ring.zeros(self.dst_dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    axpy(&mut out, &(xi * yj), self.sym(i, j));
                }
            }
        }
        out
    }

    pub fn eval(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim, "trace argument length mismatch");
        self.bilinear(x, x)
    }

    pub fn to_vector(&self) -> Vec<Scalar> {
        self.s.iter().flatten().cloned().collect()
    }

    pub fn to_bilinear(&self) -> BilinearMapRep {
        let d = self.dim;
        let mut t = Tensor3::zeros(self.ring, (d, d, self.dst_dim));
        for i in 0..d {
            for j in 0..d {
                t.set_cell(i, j, self.sym(i, j));
            }
        }
        BilinearMapRep::new(t)
    }

    pub fn add(&self, other: &TraceMap) -> TraceMap {
        assert_eq!((self.dim, self.dst_dim), (other.dim, other.dst_dim));
        let s = self.s.iter().zip(&other.s).map(|(a, b)| vec_add(a, b)).collect();
        TraceMap { s, ..self.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> TraceMap {
        let s = self.s.iter().map(|a| crate::ring::vec_scale(c, a)).collect();
        TraceMap { s, ..self.clone() }
    }

    pub fn sub(&self, other: &TraceMap) -> TraceMap {
        self.add(&other.scale(&-self.ring.one()))
    }

    pub fn is_zero(&self) -> bool {
        self.s.iter().all(|v| v.iter().all(Scalar::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_indexing() {
        let d = 5;
        for (n, (i, j)) in pairs(d).into_iter().enumerate() {
            assert_eq!(pair_index(d, i, j), n);
        }
        assert_eq!(pair_count(9), 45);
        assert_eq!(sorted_triples(9).len(), 165);
    }

    #[test]
    fn split_counts_distinct_elements() {
        assert_eq!(split_triple([1, 1, 1]), vec![(1, [1, 1])]);
        assert_eq!(split_triple([0, 0, 2]), vec![(0, [0, 2]), (2, [0, 0])]);
        assert_eq!(split_triple([0, 1, 2]).len(), 3);
    }

    #[test]
    fn symmetrization_preserves_trace() {
        let q = Ring::Rational;
        let t = Tensor3::from_entries(q, (2, 2, 1), [(0, 1, 0, q.from_i64(3)), (1, 0, 0, q.from_i64(1))]);
        let b = BilinearMapRep::new(t);
        let tr = TraceMap::from_bilinear(&b);
        assert_eq!(tr.sym(0, 1), &[q.from_i64(2)]);
        assert_eq!(tr.coefficient(0, 1), vec![q.from_i64(4)]);
        let x = vec![q.from_i64(2), q.from_i64(-1)];
        assert_eq!(tr.eval(&x), b.apply(&x, &x));
        assert_eq!(TraceMap::from_bilinear(&tr.to_bilinear()), tr);
    }
}
