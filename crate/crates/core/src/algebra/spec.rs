use super::tensor::Tensor3;
use crate::error::{Error, Result};
use crate::ring::{is_zero_vec, vec_sub, Matrix, Ring, Scalar, Subspace};

/// A unital algebra given by structure constants `e_i e_j = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub ring: Ring,
    pub dim: usize,
    pub mul: Tensor3,
    pub unit: Vec<Scalar>,
}

/// A bimodule `_L V _R`: `left[l][v]` is `e_l · v_v`, `right[v][r]` is `v_v · e_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleSpec {
    pub dim: usize,
    pub left: Tensor3,
    pub right: Tensor3,
}

/// First violated law, with the basis indices that exhibit it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: String,
    pub indices: Vec<usize>,
}

impl std::fmt::Display for LawViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails at basis indices {:?}", self.law, self.indices)
    }
}

pub(crate) fn violation(law: &str, indices: &[usize]) -> LawViolation {
    LawViolation {
        law: law.to_string(),
        indices: indices.to_vec(),
    }
}

impl AlgebraSpec {
    pub fn new(ring: Ring, dim: usize, mul: Tensor3, unit: Vec<Scalar>) -> Result<AlgebraSpec> {
        if mul.shape() != (dim, dim, dim) {
            return Err(Error::Shape(format!(
                "multiplication tensor {:?} for dimension {dim}",
                mul.shape()
            )));
        }
        if unit.len() != dim {
            return Err(Error::Shape(format!("unit of length {} for dimension {dim}", unit.len())));
        }
        if mul.ring() != ring || unit.iter().any(|s| !ring.owns(s)) {
            return Err(Error::Shape("entries outside the declared ring".into()));
        }
        Ok(AlgebraSpec { ring, dim, mul, unit })
    }

    /// The one-dimensional algebra `R`.
    pub fn scalars(ring: Ring) -> AlgebraSpec {
        AlgebraSpec {
            ring,
            dim: 1,
            mul: Tensor3::from_entries(ring, (1, 1, 1), [(0, 0, 0, ring.one())]),
            unit: vec![ring.one()],
        }
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        self.ring.unit_vector(self.dim, i)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.mul.apply(x, y)
    }

    pub fn commutator(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        vec_sub(&self.mul(x, y), &self.mul(y, x))
    }

    /// Associativity and two-sided unit on all basis elements.
    pub fn check_laws(&self, name: &str) -> std::result::Result<(), LawViolation> {
        let d = self.dim;
        for i in 0..d {
            let ei = self.basis(i);
            if self.mul(&self.unit, &ei) != ei || self.mul(&ei, &self.unit) != ei {
                return Err(violation(&format!("{name}: unit law"), &[i]));
            }
        }
        for i in 0..d {
            let ei = self.basis(i);
            for j in 0..d {
                let ij = self.mul.cell_dense(i, j);
                for k in 0..d {
                    let ek = self.basis(k);
                    let jk = self.mul.cell_dense(j, k);
                    if self.mul(&ij, &ek) != self.mul(&ei, &jk) {
                        return Err(violation(&format!("{name}: associativity"), &[i, j, k]));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.mul.cell(i, j) == self.mul.cell(j, i)))
    }

    /// Z(A) as the nullspace of `x ↦ ([x, e_i])_i`.
    pub fn center(&self) -> Subspace {
        let d = self.dim;
        let mut m = Matrix::zeros(self.ring, d * d, d);
        for x in 0..d {
            let ex = self.basis(x);
            for i in 0..d {
                let c = self.commutator(&ex, &self.basis(i));
                for (o, v) in c.into_iter().enumerate() {
                    m.set(i * d + o, x, v);
                }
            }
        }
        Subspace::from_independent(self.ring, d, m.nullspace())
    }

    /// Matrix of left multiplication by `x`.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.mul(x, &self.basis(j))).collect();
        Matrix::from_columns(self.ring, self.dim, &cols)
    }

    pub fn is_unit_element(&self, x: &[Scalar]) -> bool {
        x == self.unit.as_slice()
    }

    pub fn is_idempotent(&self, e: &[Scalar]) -> bool {
        self.mul(e, e) == e
    }

    pub fn is_zero(x: &[Scalar]) -> bool {
        is_zero_vec(x)
    }
}

impl BimoduleSpec {
    pub fn zero(ring: Ring, left_dim: usize, right_dim: usize) -> BimoduleSpec {
        BimoduleSpec {
            dim: 0,
            left: Tensor3::zeros(ring, (left_dim, 0, 0)),
            right: Tensor3::zeros(ring, (0, right_dim, 0)),
        }
    }

    pub fn act_left(&self, a: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.left.apply(a, v)
    }

    pub fn act_right(&self, v: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.right.apply(v, b)
    }

    /// Shape check against acting algebras of the given dimensions.
    pub fn check_shape(&self, name: &str, left_dim: usize, right_dim: usize) -> Result<()> {
        let d = self.dim;
        if self.left.shape() != (left_dim, d, d) || self.right.shape() != (d, right_dim, d) {
            return Err(Error::Shape(format!(
                "{name}: actions {:?}/{:?} for module dimension {d} over algebras of dimension {left_dim}/{right_dim}",
                self.left.shape(),
                self.right.shape()
            )));
        }
        Ok(())
    }

    /// Left and right module laws and commuting actions on basis elements.
    pub fn check_laws(
        &self,
        name: &str,
        left: &AlgebraSpec,
        right: &AlgebraSpec,
    ) -> std::result::Result<(), LawViolation> {
        let ring = left.ring;
        let d = self.dim;
        let e = |i| ring.unit_vector(d, i);
        for v in 0..d {
            let ev = e(v);
            if self.act_left(&left.unit, &ev) != ev {
                return Err(violation(&format!("{name}: left unit"), &[v]));
            }
            if self.act_right(&ev, &right.unit) != ev {
                return Err(violation(&format!("{name}: right unit"), &[v]));
            }
        }
        for i in 0..left.dim {
            for j in 0..left.dim {
                let ij = left.mul.cell_dense(i, j);
                for v in 0..d {
                    let lhs = self.act_left(&ij, &e(v));
                    let rhs = self.act_left(&left.basis(i), &self.left.cell_dense(j, v));
                    if lhs != rhs {
                        return Err(violation(&format!("{name}: left action associativity"), &[i, j, v]));
                    }
                }
            }
        }
        for v in 0..d {
            for i in 0..right.dim {
                let vi = self.right.cell_dense(v, i);
                for j in 0..right.dim {
                    let lhs = self.act_right(&vi, &right.basis(j));
                    let rhs = self.act_right(&e(v), &right.mul.cell_dense(i, j));
                    if lhs != rhs {
                        return Err(violation(&format!("{name}: right action associativity"), &[v, i, j]));
                    }
                }
            }
        }
        for i in 0..left.dim {
            for v in 0..d {
                let iv = self.left.cell_dense(i, v);
                for j in 0..right.dim {
                    let lhs = self.act_right(&iv, &right.basis(j));
                    let rhs = self.act_left(&left.basis(i), &self.right.cell_dense(v, j));
                    if lhs != rhs {
                        return Err(violation(&format!("{name}: actions commute"), &[i, v, j]));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builders::{matrix_algebra, upper_triangular_algebra};

    #[test]
    fn builders_satisfy_laws() {
        let f5 = Ring::PrimeField(5);
        assert!(matrix_algebra(f5, 2).check_laws("M2").is_ok());
        assert!(upper_triangular_algebra(f5, 3).check_laws("T3").is_ok());
    }

    #[test]
    fn broken_associativity_is_reported() {
        let q = Ring::Rational;
        let mut a = matrix_algebra(q, 2);
        // perturb E12·E21 = E11 into 2·E11
        a.mul.add(1, 2, 0, &q.one());
        let err = a.check_laws("A").unwrap_err();
        assert!(err.law.contains("associativity"));
    }

    #[test]
    fn centers() {
        let f5 = Ring::PrimeField(5);
        let m2 = matrix_algebra(f5, 2);
        let z = m2.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&m2.unit));
        let t2 = upper_triangular_algebra(f5, 2);
        assert_eq!(t2.center().dim(), 1);
        assert!(AlgebraSpec::scalars(f5).center().is_full());
    }
}
