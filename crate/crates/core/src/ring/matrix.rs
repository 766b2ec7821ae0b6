use std::fmt;

use super::scalar::{inv_mod, Ring, Scalar};

/// Dense row-major matrix over a single ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring,
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Builds from explicit rows; every row must have length `cols`.
    pub fn from_rows(ring: Ring, cols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix { ring, rows: n, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(ring: Ring, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(ring, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64(ring: Ring, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| ring.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(ring, cols, rows)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert!(self.ring.owns(&v));
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Scalar) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        let mut out = self.ring.zeros(self.rows);
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += &(a * vj);
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| c * x).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&-self.ring.one()))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend_from_slice(other.row(i));
                r
            })
            .collect();
        Matrix::from_rows(self.ring, cols, rows)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let rows = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Matrix::from_rows(self.ring, self.cols, rows)
    }

    /// Reduced row echelon form. Pivots are chosen left to right, top to bottom.
    pub fn rref(&self) -> Rref {
        match self.ring {
            Ring::PrimeField(p) => self.rref_mod(p),
            Ring::Rational => self.rref_generic(),
        }
    }

    fn rref_generic(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).inv().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * rv);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn rref_mod(&self, p: u64) -> Rref {
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<u64> = self
            .data
            .iter()
            .map(|s| match s {
                Scalar::Residue { value, .. } => *value,
                _ => unreachable!("ring invariant"),
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    a.swap(r * cols + j, pr * cols + j);
                }
            }
            let inv = inv_mod(a[r * cols + c], p);
            for j in c..cols {
                a[r * cols + j] = a[r * cols + j] * inv % p;
            }
            let (before, rest) = a.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u64]| {
                let f = row[c];
                if f == 0 {
                    return;
                }
                let nf = p - f;
                for j in c..cols {
                    if pivot_row[j] != 0 {
                        row[j] = (row[j] + nf * pivot_row[j]) % p;
                    }
                }
            };
            before.chunks_mut(cols).for_each(eliminate);
            after.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        let data = a
            .into_iter()
            .map(|value| Scalar::Residue { value, modulus: p })
            .collect();
        Rref {
            matrix: Matrix { ring: self.ring, rows, cols, data },
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of `{v : self·v = 0}`, one vector per free column in increasing order.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let rr = self.rref();
        nullspace_from_rref(&rr, self.cols)
    }

    /// Canonical solution of `self·x = b` with free variables set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let col = Matrix::from_columns(self.ring, self.rows, &[b.to_vec()]);
        let rr = self.hstack(&col).rref();
        if rr.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = self.ring.zeros(self.cols);
        for (r, &c) in rr.pivots.iter().enumerate() {
            x[c] = rr.matrix.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(self.ring, 0, 0));
        }
        let rr = self.hstack(&Matrix::identity(self.ring, n)).rref();
        if rr.rank() < n || rr.pivots[n - 1] != n - 1 {
            return None;
        }
        let rows = (0..n).map(|i| rr.matrix.row(i)[n..].to_vec()).collect();
        Some(Matrix::from_rows(self.ring, n, rows))
    }
}

pub(crate) fn nullspace_from_rref(rr: &Rref, cols: usize) -> Vec<Vec<Scalar>> {
    let ring = rr.matrix.ring();
    let mut is_pivot = vec![false; cols];
    for &c in &rr.pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = ring.zeros(cols);
        v[f] = ring.one();
        for (r, &c) in rr.pivots.iter().enumerate() {
            v[c] = -rr.matrix.get(r, f);
        }
        basis.push(v);
    }
    basis
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
