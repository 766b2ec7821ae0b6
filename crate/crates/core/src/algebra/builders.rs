//! Standard contexts: full and triangular matrix algebras split into blocks,
//! inflated algebras, and Peirce decompositions of an algebra by an idempotent.

use super::context::MoritaContext;
use super::spec::{AlgebraSpec, BimoduleSpec};
use super::tensor::Tensor3;
use crate::error::{Error, Result};
use crate::ring::{vec_sub, Matrix, Ring, Scalar, Subspace};

/// Where each coordinate of a matrix-unit algebra sits in the `n × n` grid.
///
/// Coordinates run block by block `(A, M, N, B)` for the split `k`, row-major
/// inside each block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixLayout {
    pub n: usize,
    pub k: usize,
    positions: Vec<(usize, usize)>,
    block_sizes: [usize; 4],
    index: Vec<Option<usize>>,
}

impl MatrixLayout {
    fn build(n: usize, k: usize, keep: impl Fn(usize, usize) -> bool) -> MatrixLayout {
        let block = |r: usize, c: usize| match (r < k, c < k) {
            (true, true) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (false, false) => 3,
        };
        let mut positions = Vec::new();
        let mut block_sizes = [0; 4];
        for b in 0..4 {
            for r in 0..n {
                for c in 0..n {
                    if block(r, c) == b && keep(r, c) {
                        positions.push((r, c));
                        block_sizes[b] += 1;
                    }
                }
            }
        }
        let mut index = vec![None; n * n];
        for (i, &(r, c)) in positions.iter().enumerate() {
            index[r * n + c] = Some(i);
        }
        MatrixLayout {
            n,
            k,
            positions,
            block_sizes,
            index,
        }
    }

    pub fn full(n: usize, k: usize) -> MatrixLayout {
        MatrixLayout::build(n, k, |_, _| true)
    }

    pub fn triangular(n: usize, k: usize) -> MatrixLayout {
        MatrixLayout::build(n, k, |r, c| r <= c)
    }

    pub fn dim(&self) -> usize {
        self.positions.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.n * self.n
    }

    pub fn position(&self, i: usize) -> (usize, usize) {
        self.positions[i]
    }

    pub fn try_index(&self, r: usize, c: usize) -> Option<usize> {
        self.index[r * self.n + c]
    }

    /// Coordinate of the matrix unit `E_rc` (zero-based).
    pub fn index(&self, r: usize, c: usize) -> usize {
        self.try_index(r, c).expect("matrix unit outside layout")
    }

    pub fn to_matrix(&self, ring: Ring, x: &[Scalar]) -> Matrix {
        assert_eq!(x.len(), self.dim());
        let mut m = Matrix::zeros(ring, self.n, self.n);
        for (i, &(r, c)) in self.positions.iter().enumerate() {
            m.set(r, c, x[i].clone());
        }
        m
    }

    /// Coordinates of a matrix; `None` if it has entries outside the layout.
    pub fn from_matrix(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        for r in 0..self.n {
            for c in 0..self.n {
                if self.try_index(r, c).is_none() && !m.get(r, c).is_zero() {
                    return None;
                }
            }
        }
        Some(self.positions.iter().map(|&(r, c)| m.get(r, c).clone()).collect())
    }

    /// Row vector of the trace `x ↦ Σ x_rr`.
    pub fn trace_functional(&self, ring: Ring) -> Vec<Scalar> {
        self.positions
            .iter()
            .map(|&(r, c)| if r == c { ring.one() } else { ring.zero() })
            .collect()
    }

    /// Matrix of `x ↦ xᵀ`; only defined on full layouts.
    pub fn transpose_map(&self, ring: Ring) -> Option<Matrix> {
        if !self.is_full() {
            return None;
        }
        let d = self.dim();
        let mut t = Matrix::zeros(ring, d, d);
        for (i, &(r, c)) in self.positions.iter().enumerate() {
            t.set(self.index(c, r), i, ring.one());
        }
        Some(t)
    }

    /// Matrix of `x ↦ u x u⁻¹`; `None` for singular `u` or a non-full layout.
    pub fn conjugation_map(&self, u: &Matrix) -> Option<Matrix> {
        if !self.is_full() {
            return None;
        }
        let ring = u.ring();
        let uinv = u.inverse()?;
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|i| {
                let e = self.to_matrix(ring, &ring.unit_vector(self.dim(), i));
                self.from_matrix(&u.mul(&e).mul(&uinv)).unwrap()
            })
            .collect();
        Some(Matrix::from_columns(ring, self.dim(), &cols))
    }

    /// The context whose blocks are spanned by the layout's matrix units.
    pub fn context(&self, ring: Ring) -> MoritaContext {
        let mut offsets = [0; 5];
        for b in 0..4 {
            offsets[b + 1] = offsets[b] + self.block_sizes[b];
        }
        let local = |b: usize| -> Vec<(usize, usize)> { self.positions[offsets[b]..offsets[b + 1]].to_vec() };
        let product = |x: usize, y: usize, z: usize| -> Tensor3 {
            let (px, py, pz) = (local(x), local(y), local(z));
            let mut t = Tensor3::zeros(ring, (px.len(), py.len(), pz.len()));
            for (i, &(r1, c1)) in px.iter().enumerate() {
                for (j, &(r2, c2)) in py.iter().enumerate() {
                    if c1 != r2 {
                        continue;
                    }
                    let k = pz
                        .iter()
                        .position(|&p| p == (r1, c2))
                        .expect("layout closed under multiplication");
                    t.add(i, j, k, &ring.one());
                }
            }
            t
        };
        let algebra = |b: usize| {
            let pos = local(b);
            let unit = pos
                .iter()
                .map(|&(r, c)| if r == c { ring.one() } else { ring.zero() })
                .collect();
            AlgebraSpec {
                ring,
                dim: pos.len(),
                mul: product(b, b, b),
                unit,
            }
        };
        MoritaContext {
            ring,
            a: algebra(0),
            b: algebra(3),
            m: BimoduleSpec {
                dim: self.block_sizes[1],
                left: product(0, 1, 1),
                right: product(1, 3, 1),
            },
            n: BimoduleSpec {
                dim: self.block_sizes[2],
                left: product(3, 2, 2),
                right: product(2, 0, 2),
            },
            phi: product(1, 2, 0),
            psi: product(2, 1, 3),
        }
    }
}

fn unit_algebra(ring: Ring, n: usize, keep: impl Fn(usize, usize) -> bool) -> AlgebraSpec {
    let pos: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| keep(r, c))
        .collect();
    let mut mul = Tensor3::zeros(ring, (pos.len(), pos.len(), pos.len()));
    for (i, &(r1, c1)) in pos.iter().enumerate() {
        for (j, &(r2, c2)) in pos.iter().enumerate() {
            if c1 == r2 {
                let k = pos.iter().position(|&p| p == (r1, c2)).unwrap();
                mul.add(i, j, k, &ring.one());
            }
        }
    }
    let unit = pos
        .iter()
        .map(|&(r, c)| if r == c { ring.one() } else { ring.zero() })
        .collect();
    AlgebraSpec {
        ring,
        dim: pos.len(),
        mul,
        unit,
    }
}

/// `M_n(R)` with basis `E_rc` in row-major order.
pub fn matrix_algebra(ring: Ring, n: usize) -> AlgebraSpec {
    unit_algebra(ring, n, |_, _| true)
}

/// Upper triangular `T_n(R)` with basis `E_rc`, `r ≤ c`, row-major.
pub fn upper_triangular_algebra(ring: Ring, n: usize) -> AlgebraSpec {
    unit_algebra(ring, n, |r, c| r <= c)
}

fn check_split(n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParams(format!(
            "split {k} must satisfy 1 <= split < n = {n}"
        )));
    }
    Ok(())
}

/// `M_n(R)` as blocks `M_k`, `k × (n−k)`, `(n−k) × k`, `M_{n−k}`.
pub fn full_matrix(n: usize, k: usize, ring: Ring) -> Result<MoritaContext> {
    check_split(n, k)?;
    Ok(MatrixLayout::full(n, k).context(ring))
}

/// `T_n(R)` as blocks `T_k`, `k × (n−k)`, `0`, `T_{n−k}`.
pub fn upper_triangular(n: usize, k: usize, ring: Ring) -> Result<MoritaContext> {
    check_split(n, k)?;
    Ok(MatrixLayout::triangular(n, k).context(ring))
}

/// Inflated algebra: `A = B = R`, `M = N = V = R^dimV`, both pairings given by
/// the symmetric form `gamma`. This follows the usual literature convention; the
/// diagrams then force `gamma = 0` once `dimV ≥ 2`, which the axiom scan reports.
pub fn inflated(ring: Ring, dim_v: usize, gamma: &Matrix) -> Result<MoritaContext> {
    if dim_v == 0 {
        return Err(Error::InvalidParams("dimV must be at least 1".into()));
    }
    if gamma.rows() != dim_v || gamma.cols() != dim_v || gamma.ring() != ring {
        return Err(Error::Shape(format!(
            "gamma must be a {dim_v}×{dim_v} matrix over {ring}"
        )));
    }
    if gamma != &gamma.transpose() {
        return Err(Error::InvalidParams("gamma must be symmetric".into()));
    }
    let action = |left: bool| {
        let shape = if left { (1, dim_v, dim_v) } else { (dim_v, 1, dim_v) };
        Tensor3::from_entries(
            ring,
            shape,
            (0..dim_v).map(|v| if left { (0, v, v, ring.one()) } else { (v, 0, v, ring.one()) }),
        )
    };
    let pairing = Tensor3::from_entries(
        ring,
        (dim_v, dim_v, 1),
        (0..dim_v).flat_map(|i| (0..dim_v).map(move |j| (i, j, 0, gamma.get(i, j).clone()))),
    );
    let module = BimoduleSpec {
        dim: dim_v,
        left: action(true),
        right: action(false),
    };
    let ctx = MoritaContext {
        ring,
        a: AlgebraSpec::scalars(ring),
        b: AlgebraSpec::scalars(ring),
        m: module.clone(),
        n: module,
        phi: pairing.clone(),
        psi: pairing,
    };
    match ctx.check_axioms()? {
        Ok(()) => Ok(ctx),
        Err(v) => Err(Error::Axiom(v.to_string())),
    }
}

/// `A = B = R×R`, `M = R²` with coordinatewise actions `(a·m)_i = a_i m_i`,
/// `(m·b)_i = m_i b_i`, and `N = 0`. Faithful but not loyal: `(1,0)·M·(0,1) = 0`.
pub fn coordinatewise(ring: Ring) -> MoritaContext {
    let one = ring.one();
    let prod = Tensor3::from_entries(ring, (2, 2, 2), [(0, 0, 0, one.clone()), (1, 1, 1, one.clone())]);
    let alg = AlgebraSpec {
        ring,
        dim: 2,
        mul: prod.clone(),
        unit: vec![one.clone(), one],
    };
    MoritaContext {
        ring,
        a: alg.clone(),
        b: alg,
        m: BimoduleSpec {
            dim: 2,
            left: prod.clone(),
            right: prod,
        },
        n: BimoduleSpec::zero(ring, 2, 2),
        phi: Tensor3::zeros(ring, (2, 0, 2)),
        psi: Tensor3::zeros(ring, (0, 2, 2)),
    }
}

/// Peirce context of `alg` at a nontrivial idempotent `e`, with `f = 1 − e`.
///
/// Returns the context and the matrix whose columns express the block bases
/// `eAe, eAf, fAe, fAf` in the coordinates of `alg`; it maps assembled
/// coordinates to `alg` coordinates and is an algebra isomorphism.
pub fn peirce(alg: &AlgebraSpec, e: &[Scalar]) -> Result<(MoritaContext, Matrix)> {
    let ring = alg.ring;
    let d = alg.dim;
    if e.len() != d {
        return Err(Error::Shape(format!("idempotent of length {} for dimension {d}", e.len())));
    }
    if !alg.is_idempotent(e) {
        return Err(Error::InvalidParams("element is not idempotent".into()));
    }
    if e.iter().all(Scalar::is_zero) || alg.is_unit_element(e) {
        return Err(Error::InvalidParams("idempotent must differ from 0 and 1".into()));
    }
    let f = vec_sub(&alg.unit, e);
    let sides = [(e, e), (e, f.as_slice()), (f.as_slice(), e), (f.as_slice(), f.as_slice())];
    let blocks: Vec<Subspace> = sides
        .iter()
        .map(|(l, r)| {
            let imgs: Vec<Vec<Scalar>> = (0..d)
                .map(|i| alg.mul(&alg.mul(l, &alg.basis(i)), r))
                .collect();
            Subspace::span(ring, d, &imgs)
        })
        .collect();
    let product = |x: usize, y: usize, z: usize| -> Tensor3 {
        let (bx, by, bz) = (&blocks[x], &blocks[y], &blocks[z]);
        let mut t = Tensor3::zeros(ring, (bx.dim(), by.dim(), bz.dim()));
        for (i, u) in bx.basis().iter().enumerate() {
            for (j, v) in by.basis().iter().enumerate() {
                let c = bz.coords(&alg.mul(u, v)).expect("Peirce product stays in its block");
                t.set_cell(i, j, &c);
            }
        }
        t
    };
    let algebra = |b: usize, one: &[Scalar]| AlgebraSpec {
        ring,
        dim: blocks[b].dim(),
        mul: product(b, b, b),
        unit: blocks[b].coords(one).expect("corner unit lies in its corner"),
    };
    let ctx = MoritaContext {
        ring,
        a: algebra(0, e),
        b: algebra(3, &f),
        m: BimoduleSpec {
            dim: blocks[1].dim(),
            left: product(0, 1, 1),
            right: product(1, 3, 1),
        },
        n: BimoduleSpec {
            dim: blocks[2].dim(),
            left: product(3, 2, 2),
            right: product(2, 0, 2),
        },
        phi: product(1, 2, 0),
        psi: product(2, 1, 3),
    };
    let columns: Vec<Vec<Scalar>> = blocks.iter().flat_map(|b| b.basis().to_vec()).collect();
    let iso = Matrix::from_columns(ring, d, &columns);
    Ok((ctx, iso))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Gma;

    #[test]
    fn full_matrix_block_dims() {
        let q = Ring::Rational;
        assert_eq!(full_matrix(2, 1, q).unwrap().dims(), [1, 1, 1, 1]);
        let c = full_matrix(3, 1, Ring::PrimeField(5)).unwrap();
        assert_eq!(c.dims(), [1, 2, 2, 4]);
        assert!(!c.b.is_commutative());
        assert!(full_matrix(3, 3, q).is_err());
        assert!(full_matrix(3, 0, q).is_err());
    }

    #[test]
    fn triangular_blocks() {
        let f5 = Ring::PrimeField(5);
        let c = upper_triangular(2, 1, f5).unwrap();
        assert!(c.a.is_commutative() && c.b.is_commutative());
        let c = upper_triangular(3, 1, f5).unwrap();
        assert_eq!(c.dims(), [1, 2, 0, 3]);
        assert!(!c.b.is_commutative());
    }

    #[test]
    fn inflated_examples() {
        let f5 = Ring::PrimeField(5);
        let one = Matrix::identity(f5, 1);
        let g = Gma::assemble(inflated(f5, 1, &one).unwrap()).unwrap();
        assert_eq!(g.dim(), 4);
        let v = |xs: &[i64]| xs.iter().map(|&x| f5.from_i64(x)).collect::<Vec<_>>();
        assert_eq!(g.unit(), v(&[1, 0, 0, 1]).as_slice());
        let zero = Matrix::zeros(f5, 2, 2);
        let g = Gma::assemble(inflated(f5, 2, &zero).unwrap()).unwrap();
        for i in 1..5 {
            for j in 1..5 {
                assert!(g.basis_product(i, j).is_empty());
            }
        }
        assert!(matches!(inflated(f5, 2, &Matrix::identity(f5, 2)), Err(Error::Axiom(_))));
        let skew = Matrix::from_i64(f5, &[&[0, 1], &[4, 0]]);
        assert!(matches!(inflated(f5, 2, &skew), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn peirce_of_matrix_units_matches_full_matrix() {
        let f5 = Ring::PrimeField(5);
        let m2 = matrix_algebra(f5, 2);
        let e = m2.basis(0);
        let (ctx, iso) = peirce(&m2, &e).unwrap();
        assert_eq!(ctx, full_matrix(2, 1, f5).unwrap());
        // columns are E11, E12, E21, E22 in row-major coordinates
        assert_eq!(iso, Matrix::identity(f5, 4));
    }

    #[test]
    fn peirce_of_triangular_has_zero_n() {
        let f5 = Ring::PrimeField(5);
        let t2 = upper_triangular_algebra(f5, 2);
        let (ctx, _) = peirce(&t2, &t2.basis(0)).unwrap();
        assert_eq!(ctx.n.dim, 0);
        assert!(peirce(&t2, &t2.unit).is_err());
        assert!(peirce(&t2, &t2.basis(1)).is_err());
    }

    #[test]
    fn layout_maps() {
        let f5 = Ring::PrimeField(5);
        let lay = MatrixLayout::full(3, 1);
        let t = lay.transpose_map(f5).unwrap();
        assert_eq!(t.mul(&t), Matrix::identity(f5, 9));
        assert!(MatrixLayout::triangular(3, 1).transpose_map(f5).is_none());
        let u = Matrix::from_i64(f5, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let c = lay.conjugation_map(&u).unwrap();
        let x = lay.from_matrix(&Matrix::identity(f5, 3)).unwrap();
        assert_eq!(c.mul_vec(&x), x);
    }
}
