use crate::algebra::{Gma, Tensor3};
use crate::polymap::TraceMap;
use crate::ring::{axpy, Scalar};

/// Letters of the components landing in A, M, N, B.
pub const BLOCK_LETTERS: [char; 4] = ['f', 'g', 'h', 'k'];

/// Label such as `"f14"`; blocks are numbered 1..4 in the order A, M, N, B.
pub fn block_label(out: usize, i: usize, j: usize) -> String {
    format!("{}{}{}", BLOCK_LETTERS[out], i + 1, j + 1)
}

/// The trace split by input and output blocks.
///
/// For blocks `i < j` the component is `q(a_i, a_j) + q(a_j, a_i)` projected
/// to the output block; for `i = j` it is the symmetric part restricted to
/// block `i`. Inputs and outputs use local block coordinates.
#[derive(Clone, Debug)]
pub struct ComponentGrid {
    dims: [usize; 4],
    // indexed by [out][i][j] with i ≤ j
    parts: Vec<Vec<Vec<Option<Tensor3>>>>,
}

impl ComponentGrid {
    pub fn new(g: &Gma, t: &TraceMap) -> ComponentGrid {
        let ring = g.ring();
        let dims = g.block_dims();
        let off = g.offsets();
        let two = ring.from_i64(2);
        let mut parts = vec![vec![vec![None; 4]; 4]; 4];
        for i in 0..4 {
            for j in i..4 {
                let mut tensors: Vec<Tensor3> = (0..4)
                    .map(|o| Tensor3::zeros(ring, (dims[i], dims[j], dims[o])))
                    .collect();
                for u in 0..dims[i] {
                    for v in 0..dims[j] {
                        let s = t.sym(off[i] + u, off[j] + v);
                        for (o, tensor) in tensors.iter_mut().enumerate() {
                            for w in 0..dims[o] {
                                let x = &s[off[o] + w];
                                if x.is_zero() {
                                    continue;
                                }
                                if i < j {
                                    tensor.add(u, v, w, &(&two * x));
                                } else {
                                    tensor.add(u, v, w, x);
                                }
                            }
                        }
                    }
                }
                for (o, tensor) in tensors.into_iter().enumerate() {
                    parts[o][i][j] = Some(tensor);
                }
            }
        }
        ComponentGrid { dims, parts }
    }

    pub fn dims(&self) -> [usize; 4] {
        self.dims
    }

    /// The component from blocks `i`, `j` into block `out`; arguments in either order.
    pub fn component(&self, out: usize, i: usize, j: usize) -> &Tensor3 {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.parts[out][a][b].as_ref().expect("component present for i ≤ j")
    }

    /// Evaluates the component on `x` from block `i` and `y` from block `j`.
    pub fn eval(&self, out: usize, i: usize, j: usize, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        if i <= j {
            self.component(out, i, j).apply(x, y)
        } else {
            self.component(out, j, i).apply(y, x)
        }
    }

    pub fn is_zero(&self, out: usize, i: usize, j: usize) -> bool {
        self.component(out, i, j).nnz() == 0
    }

    /// `Σ_{i ≤ j}` components on the blocks of `x`, reassembled in G coordinates.
    pub fn reassemble(&self, g: &Gma, x: &[Scalar]) -> Vec<Scalar> {
        let ring = g.ring();
        let blocks: Vec<Vec<Scalar>> = (0..4).map(|b| g.project(b, x)).collect();
        let mut out = g.zero();
        for o in 0..4 {
            let mut acc = ring.zeros(self.dims[o]);
            for i in 0..4 {
                for j in i..4 {
                    let v = self.eval(o, i, j, &blocks[i], &blocks[j]);
                    axpy(&mut acc, &ring.one(), &v);
                }
            }
            axpy(&mut out, &ring.one(), &g.embed(o, &acc));
        }
        out
    }

    /// Components that must vanish for a centralizing trace but do not:
    /// the N-valued part only involves h13, h23, h33, h34 and the M-valued
    /// part only g12, g22, g23, g24.
    pub fn vanishing_violations(&self) -> Vec<String> {
        const H_ZERO: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 3), (1, 1), (1, 3), (3, 3)];
        const G_ZERO: [(usize, usize); 6] = [(0, 0), (0, 2), (0, 3), (2, 2), (2, 3), (3, 3)];
        let mut out = Vec::new();
        for &(i, j) in &H_ZERO {
            if !self.is_zero(2, i, j) {
                out.push(block_label(2, i, j));
            }
        }
        for &(i, j) in &G_ZERO {
            if !self.is_zero(1, i, j) {
                out.push(block_label(1, i, j));
            }
        }
        out.sort();
        out
    }

    /// Basis pairs `u ≤ v` of block `i` (M or N) where the polarized value
    /// `f_ii(e_u, e_v) ⊕ k_ii(e_u, e_v)` is not central. Z(G) is a subspace, so
    /// this is equivalent to `f_ii(a, a) ⊕ k_ii(a, a) ∈ Z(G)` for every `a`.
    pub fn diagonal_centrality_violations(&self, g: &Gma, i: usize) -> Vec<(usize, usize)> {
        let ring = g.ring();
        let c = g.center();
        let n = self.dims[i];
        let mut out = Vec::new();
        for u in 0..n {
            let eu = ring.unit_vector(n, u);
            for v in u..n {
                let ev = ring.unit_vector(n, v);
                let a = self.eval(0, i, i, &eu, &ev);
                let b = self.eval(3, i, i, &eu, &ev);
                if !c.contains(&c.diagonal(&a, &b)) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builders::full_matrix;
    use crate::polymap::BilinearMapRep;
    use crate::ring::Ring;
    use crate::rng::Rng;

    #[test]
    fn product_components_on_m3() {
        let f5 = Ring::PrimeField(5);
        let g = Gma::assemble(full_matrix(3, 1, f5).unwrap()).unwrap();
        let t = TraceMap::from_bilinear(&BilinearMapRep::product(&g));
        let grid = ComponentGrid::new(&g, &t);
        // A and B multiply to zero
        assert!(grid.is_zero(0, 0, 3) && grid.is_zero(3, 0, 3));
        let one = vec![f5.one()];
        assert_eq!(grid.eval(0, 0, 0, &one, &one), one);
        let b = vec![f5.from_i64(1), f5.from_i64(2), f5.from_i64(0), f5.from_i64(3)];
        let b2 = g.context().b.mul(&b, &b);
        assert_eq!(grid.eval(3, 3, 3, &b, &b), b2);
        assert!(grid.vanishing_violations().is_empty());
    }

    #[test]
    fn reassembly_matches_direct_evaluation() {
        let f5 = Ring::PrimeField(5);
        let g = Gma::assemble(full_matrix(3, 1, f5).unwrap()).unwrap();
        let mut rng = Rng::new(9);
        let d = g.dim();
        let mut q = Tensor3::zeros(f5, (d, d, d));
        for _ in 0..60 {
            let (i, j, k) = (rng.below(d as u64), rng.below(d as u64), rng.below(d as u64));
            q.add(i as usize, j as usize, k as usize, &rng.scalar(f5));
        }
        let t = TraceMap::from_bilinear(&BilinearMapRep::new(q));
        let grid = ComponentGrid::new(&g, &t);
        for _ in 0..100 {
            let x = rng.vector(f5, d);
            assert_eq!(grid.reassemble(&g, &x), t.eval(&x));
        }
    }
}
