use crate::ring::{Ring, Scalar};

/// Sparse coefficient tensor `t[i][j] = Σ_k v·e_k`, stored per `(i, j)` cell.
///
/// Cells keep their entries sorted by `k` with no zero values, so equality of
/// tensors is equality of the represented bilinear maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    ring: Ring,
    shape: (usize, usize, usize),
    cells: Vec<Vec<(usize, Scalar)>>,
}

impl Tensor3 {
    pub fn zeros(ring: Ring, shape: (usize, usize, usize)) -> Tensor3 {
        Tensor3 {
            ring,
            shape,
            cells: vec![Vec::new(); shape.0 * shape.1],
        }
    }

    /// Accumulates entries; repeated indices add up.
    pub fn from_entries<I>(ring: Ring, shape: (usize, usize, usize), entries: I) -> Tensor3
    where
        I: IntoIterator<Item = (usize, usize, usize, Scalar)>,
    {
        let mut t = Tensor3::zeros(ring, shape);
        for (i, j, k, v) in entries {
            t.add(i, j, k, &v);
        }
        t
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        self.shape
    }

    pub fn add(&mut self, i: usize, j: usize, k: usize, v: &Scalar) {
        assert!(
            i < self.shape.0 && j < self.shape.1 && k < self.shape.2,
            "tensor index ({i},{j},{k}) outside {:?}",
            self.shape
        );
        if v.is_zero() {
            return;
        }
        let cell = &mut self.cells[i * self.shape.1 + j];
        match cell.binary_search_by_key(&k, |e| e.0) {
            Ok(pos) => {
                cell[pos].1 += v;
                if cell[pos].1.is_zero() {
                    cell.remove(pos);
                }
            }
            Err(pos) => cell.insert(pos, (k, v.clone())),
        }
    }

    /// Sets cell `(i, j)` to the dense vector `v` of length `shape.2`.
    pub fn set_cell(&mut self, i: usize, j: usize, v: &[Scalar]) {
        assert_eq!(v.len(), self.shape.2);
        self.cells[i * self.shape.1 + j] = v
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(k, s)| (k, s.clone()))
            .collect();
    }

    pub fn cell(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.cells[i * self.shape.1 + j]
    }

    pub fn cell_dense(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = self.ring.zeros(self.shape.2);
        for (k, v) in self.cell(i, j) {
            out[*k] = v.clone();
        }
        out
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.cell(i, j)
            .iter()
            .find(|e| e.0 == k)
            .map_or_else(|| self.ring.zero(), |e| e.1.clone())
    }

    /// Nonzero entries in `(i, j, k)` lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        let n1 = self.shape.1;
        self.cells.iter().enumerate().flat_map(move |(ij, cell)| {
            cell.iter().map(move |(k, v)| (ij / n1, ij % n1, *k, v))
        })
    }

    pub fn nnz(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    /// Bilinear contraction `Σ x_i y_j t[i][j]`.
    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.shape.0, "left operand length mismatch");
        assert_eq!(y.len(), self.shape.1, "right operand length mismatch");
        let mut out = self.ring.zeros(self.shape.2);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let cell = self.cell(i, j);
                if cell.is_empty() {
                    continue;
                }
                let c = xi * yj;
                for (k, v) in cell {
                    out[*k] += &(&c * v);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Tensor3 {
        Tensor3::from_entries(
            self.ring,
            self.shape,
            self.entries().map(|(i, j, k, v)| (i, j, k, c * v)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accumulation_cancels() {
        let q = Ring::Rational;
        let mut t = Tensor3::zeros(q, (2, 2, 2));
        t.add(0, 1, 1, &q.from_i64(3));
        t.add(0, 1, 1, &q.from_i64(-3));
        assert_eq!(t.nnz(), 0);
        assert_eq!(t, Tensor3::zeros(q, (2, 2, 2)));
    }

    #[test]
    fn contraction() {
        let f5 = Ring::PrimeField(5);
        let t = Tensor3::from_entries(
            f5,
            (2, 2, 1),
            [(0, 0, 0, f5.one()), (1, 1, 0, f5.from_i64(2))],
        );
        let x = vec![f5.from_i64(2), f5.from_i64(1)];
        // 2*2*1 + 1*1*2 = 6 = 1
        assert_eq!(t.apply(&x, &x), vec![f5.one()]);
    }
}
