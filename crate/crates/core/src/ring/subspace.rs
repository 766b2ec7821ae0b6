use super::matrix::Matrix;
use super::scalar::{Ring, Scalar};

/// A subspace of `ring^ambient` with a fixed independent basis.
///
/// Coordinates are taken with respect to `basis` in its stored order. The
/// complement extends `basis` greedily by standard vectors in index order, and
/// `quotient` maps a vector to its coordinates along that complement.
#[derive(Clone, Debug)]
pub struct Subspace {
    ring: Ring,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    // rows of the k×k inverse on `coord_rows`, used for coordinates
    coord_rows: Vec<usize>,
    coord_inv: Matrix,
    complement: Vec<usize>,
    quotient: Matrix,
}

impl Subspace {
    /// Span of the given vectors; dependent vectors are dropped in order.
    pub fn span(ring: Ring, ambient: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        let mut basis: Vec<Vec<Scalar>> = Vec::new();
        let mut rank = 0;
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length mismatch");
            let mut trial = basis.clone();
            trial.push(v.clone());
            let r = Matrix::from_rows(ring, ambient, trial.clone()).rank();
            if r > rank {
                basis = trial;
                rank = r;
            }
        }
        Subspace::from_independent(ring, ambient, basis)
    }

    /// Wraps vectors already known to be independent (e.g. a nullspace basis).
    pub fn from_independent(ring: Ring, ambient: usize, basis: Vec<Vec<Scalar>>) -> Subspace {
        let k = basis.len();
        let cols = Matrix::from_columns(ring, ambient, &basis);
        // pivot rows of the column matrix give an invertible k×k minor
        let rr = cols.transpose().rref();
        assert_eq!(rr.rank(), k, "basis vectors are dependent");
        let coord_rows = rr.pivots.clone();
        let coord_inv = cols
            .select_rows(&coord_rows)
            .inverse()
            .expect("pivot minor is invertible");

        // e_i joins greedily iff no w in the span has last nonzero coordinate i,
        // i.e. iff i is not a pivot of the echelon form taken from the right
        let reversed: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|b| b.iter().rev().cloned().collect())
            .collect();
        let mut absorbed = vec![false; ambient];
        for p in Matrix::from_rows(ring, ambient, reversed).rref().pivots {
            absorbed[ambient - 1 - p] = true;
        }
        let complement: Vec<usize> = (0..ambient).filter(|&i| !absorbed[i]).collect();
        let mut full = basis.clone();
        full.extend(complement.iter().map(|&i| ring.unit_vector(ambient, i)));
        let inv = Matrix::from_columns(ring, ambient, &full)
            .inverse()
            .expect("greedy complement spans");
        let quotient = inv.select_rows(&(k..ambient).collect::<Vec<_>>());
        Subspace {
            ring,
            ambient,
            basis,
            coord_rows,
            coord_inv,
            complement,
            quotient,
        }
    }

    pub fn zero(ring: Ring, ambient: usize) -> Subspace {
        Subspace::from_independent(ring, ambient, Vec::new())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Indices of the standard vectors completing `basis` to a basis of the ambient space.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// Matrix of the projection onto the complement coordinates; its kernel is the subspace.
    pub fn quotient_matrix(&self) -> &Matrix {
        &self.quotient
    }

    pub fn project_quotient(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.quotient.mul_vec(v)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.project_quotient(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates along `basis`, or `None` when `v` is outside the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        let picked: Vec<Scalar> = self.coord_rows.iter().map(|&i| v[i].clone()).collect();
        Some(self.coord_inv.mul_vec(&picked))
    }

    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim());
        let mut out = self.ring.zeros(self.ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            super::scalar::axpy(&mut out, c, b);
        }
        out
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(ring: Ring, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| ring.from_i64(x)).collect()
    }

    #[test]
    fn span_drops_dependent_vectors() {
        let q = Ring::Rational;
        let s = Subspace::span(q, 3, &[v(q, &[1, 1, 0]), v(q, &[2, 2, 0]), v(q, &[0, 0, 1])]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(q, &[3, 3, 5])));
        assert!(!s.contains(&v(q, &[1, 0, 0])));
        assert_eq!(s.coords(&v(q, &[3, 3, 5])), Some(v(q, &[3, 5])));
    }

    #[test]
    fn greedy_complement_order() {
        let f5 = Ring::PrimeField(5);
        let s = Subspace::span(f5, 4, &[v(f5, &[1, 0, 0, 1])]);
        assert_eq!(s.complement(), &[0, 1, 2]);
        let p = s.project_quotient(&v(f5, &[1, 0, 0, 1]));
        assert!(p.iter().all(Scalar::is_zero));
        // e_3 = (1,0,0,1) - e_0
        let p = s.project_quotient(&v(f5, &[0, 0, 0, 1]));
        assert_eq!(p, v(f5, &[4, 0, 0]));
        let t = Subspace::span(f5, 2, &[v(f5, &[1, 1])]);
        assert_eq!(t.complement(), &[0]);
    }

    #[test]
    fn zero_subspace_is_identity_quotient() {
        let q = Ring::Rational;
        let s = Subspace::zero(q, 2);
        assert_eq!(s.quotient_matrix(), &Matrix::identity(q, 2));
        assert!(s.contains(&v(q, &[0, 0])));
    }
}
