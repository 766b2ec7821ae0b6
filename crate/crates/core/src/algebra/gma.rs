use std::sync::OnceLock;

use super::context::MoritaContext;
use super::spec::{AlgebraSpec, LawViolation};
use super::tensor::Tensor3;
use crate::center::CenterData;
use crate::error::Error;
use crate::ring::{vec_add, vec_sub, Ring, Scalar};

/// Block labels in coordinate order.
pub const BLOCK_NAMES: [&str; 4] = ["A", "M", "N", "B"];

/// The generalized matrix algebra of a context, coordinates ordered `(A, M, N, B)`.
#[derive(Debug)]
pub struct Gma {
    ctx: MoritaContext,
    offsets: [usize; 5],
    mul: Tensor3,
    unit: Vec<Scalar>,
    center: OnceLock<CenterData>,
}

impl Clone for Gma {
    fn clone(&self) -> Gma {
        Gma {
            ctx: self.ctx.clone(),
            offsets: self.offsets,
            mul: self.mul.clone(),
            unit: self.unit.clone(),
            center: self.center.clone(),
        }
    }
}

/// Why a context could not be assembled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssemblyError {
    Input(Error),
    Axiom(LawViolation),
}

impl From<AssemblyError> for Error {
    fn from(e: AssemblyError) -> Error {
        match e {
            AssemblyError::Input(e) => e,
            AssemblyError::Axiom(v) => Error::Axiom(v.to_string()),
        }
    }
}

impl Gma {
    /// Validates the context and assembles the block multiplication.
    pub fn assemble(ctx: MoritaContext) -> std::result::Result<Gma, AssemblyError> {
        match ctx.check_axioms() {
            Err(e) => return Err(AssemblyError::Input(e)),
            Ok(Err(v)) => return Err(AssemblyError::Axiom(v)),
            Ok(Ok(())) => {}
        }
        Ok(Gma::assemble_unchecked(ctx))
    }

    /// Assembly without the axiom scan; shapes must already be valid.
    pub fn assemble_unchecked(ctx: MoritaContext) -> Gma {
        let ring = ctx.ring;
        let [da, dm, dn, db] = ctx.dims();
        let offsets = [0, da, da + dm, da + dm + dn, da + dm + dn + db];
        let d = offsets[4];
        let mut mul = Tensor3::zeros(ring, (d, d, d));
        let mut put = |bi: usize, bj: usize, bk: usize, t: &Tensor3| {
            for (i, j, k, v) in t.entries() {
                mul.add(offsets[bi] + i, offsets[bj] + j, offsets[bk] + k, v);
            }
        };
        put(0, 0, 0, &ctx.a.mul);
        put(0, 1, 1, &ctx.m.left);
        put(1, 3, 1, &ctx.m.right);
        put(1, 2, 0, &ctx.phi);
        put(2, 0, 2, &ctx.n.right);
        put(3, 2, 2, &ctx.n.left);
        put(2, 1, 3, &ctx.psi);
        put(3, 3, 3, &ctx.b.mul);
        let mut unit = ring.zeros(d);
        unit[..da].clone_from_slice(&ctx.a.unit);
        unit[offsets[3]..].clone_from_slice(&ctx.b.unit);
        Gma {
            ctx,
            offsets,
            mul,
            unit,
            center: OnceLock::new(),
        }
    }

    pub fn context(&self) -> &MoritaContext {
        &self.ctx
    }

    pub fn ring(&self) -> Ring {
        self.ctx.ring
    }

    pub fn dim(&self) -> usize {
        self.offsets[4]
    }

    pub fn offsets(&self) -> [usize; 5] {
        self.offsets
    }

    pub fn block_dims(&self) -> [usize; 4] {
        self.ctx.dims()
    }

    pub fn block_range(&self, block: usize) -> std::ops::Range<usize> {
        self.offsets[block]..self.offsets[block + 1]
    }

    /// Block containing basis index `i`.
    pub fn block_of(&self, i: usize) -> usize {
        (0..4).find(|&b| i < self.offsets[b + 1]).expect("index inside algebra")
    }

    pub fn mul_tensor(&self) -> &Tensor3 {
        &self.mul
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        self.ring().unit_vector(self.dim(), i)
    }

    pub fn zero(&self) -> Vec<Scalar> {
        self.ring().zeros(self.dim())
    }

    /// `e_i e_j` as sparse `(k, value)` pairs.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        self.mul.cell(i, j)
    }

    pub fn basis_product_dense(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.mul.cell_dense(i, j)
    }

    /// Embeds block coordinates into the algebra.
    pub fn embed(&self, block: usize, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.block_dims()[block]);
        let mut out = self.zero();
        out[self.block_range(block)].clone_from_slice(v);
        out
    }

    pub fn project(&self, block: usize, x: &[Scalar]) -> Vec<Scalar> {
        x[self.block_range(block)].to_vec()
    }

    /// Keeps only the coordinates of one block.
    pub fn restrict(&self, block: usize, x: &[Scalar]) -> Vec<Scalar> {
        self.embed(block, &self.project(block, x))
    }

    fn check_len(&self, x: &[Scalar]) {
        assert_eq!(x.len(), self.dim(), "element length does not match algebra dimension");
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.check_len(x);
        self.check_len(y);
        self.mul.apply(x, y)
    }

    pub fn square(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.mul(x, x)
    }

    pub fn commutator(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        vec_sub(&self.mul(x, y), &self.mul(y, x))
    }

    pub fn jordan(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        vec_add(&self.mul(x, y), &self.mul(y, x))
    }

    /// `[[x, y], z]`.
    pub fn second_commutator(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        self.commutator(&self.commutator(x, y), z)
    }

    /// `[e_i, e_j]` from the structure constants.
    pub fn basis_commutator(&self, i: usize, j: usize) -> Vec<Scalar> {
        vec_sub(&self.basis_product_dense(i, j), &self.basis_product_dense(j, i))
    }

    /// The assembled algebra viewed as a plain structure-constant algebra.
    pub fn as_algebra(&self) -> AlgebraSpec {
        AlgebraSpec {
            ring: self.ring(),
            dim: self.dim(),
            mul: self.mul.clone(),
            unit: self.unit.clone(),
        }
    }

    /// Center data, computed once.
    pub fn center(&self) -> &CenterData {
        self.center.get_or_init(|| CenterData::compute(self))
    }

    pub fn is_central(&self, x: &[Scalar]) -> bool {
        self.center().z_g.contains(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builders::{full_matrix, upper_triangular, MatrixLayout};

    #[test]
    fn full_matrix_units_multiply() {
        let q = Ring::Rational;
        let g = Gma::assemble(full_matrix(2, 1, q).unwrap()).unwrap();
        let lay = MatrixLayout::full(2, 1);
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for (k, l) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let prod = g.mul(&g.basis(lay.index(i, j)), &g.basis(lay.index(k, l)));
                let expect = if j == k { g.basis(lay.index(i, l)) } else { g.zero() };
                assert_eq!(prod, expect);
            }
        }
    }

    #[test]
    fn triangular_n_block_is_inert() {
        let f5 = Ring::PrimeField(5);
        let g = Gma::assemble(upper_triangular(2, 1, f5).unwrap()).unwrap();
        assert_eq!(g.dim(), 3);
        assert_eq!(g.block_dims(), [1, 1, 0, 1]);
    }

    #[test]
    fn element_operations() {
        let f5 = Ring::PrimeField(5);
        let g = Gma::assemble(full_matrix(2, 1, f5).unwrap()).unwrap();
        let lay = MatrixLayout::full(2, 1);
        let e = |i, j| g.basis(lay.index(i, j));
        assert_eq!(g.commutator(&e(0, 0), &e(0, 1)), e(0, 1));
        assert_eq!(g.jordan(&e(0, 1), &e(1, 0)), vec_add(&e(0, 0), &e(1, 1)));
        assert_eq!(
            g.second_commutator(&e(0, 0), &e(0, 1), &e(1, 0)),
            vec_sub(&e(0, 0), &e(1, 1))
        );
    }

    #[test]
    #[should_panic(expected = "element length")]
    fn dimension_mismatch_panics() {
        let f5 = Ring::PrimeField(5);
        let g = Gma::assemble(full_matrix(2, 1, f5).unwrap()).unwrap();
        g.mul(&f5.zeros(3), &g.zero());
    }
}
