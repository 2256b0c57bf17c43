//! Dense exact matrices over a `Field` carrier.
//!
//! Row-major storage. Reduction is Gauss-Jordan with a deterministic pivot
//! rule (scan columns left to right, take the first nonzero entry at or
//! below the current row), so bases and projections are reproducible across
//! runs. Zero-sized matrices are first-class: modules routinely have empty
//! components.

use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

impl<K: Field> std::fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| self.field.render(self.at(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of Gauss-Jordan reduction.
pub struct Rref<K: Field> {
    pub mat: Matrix<K>,
    /// Pivot column for each of the first `rank` rows, strictly increasing.
    pub pivots: Vec<usize>,
}

impl<K: Field> Matrix<K> {
    pub fn zero(field: K, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: K, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(field: K, rows: Vec<Vec<K::Elem>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        let data = rows.into_iter().flatten().collect();
        Matrix { field, rows: nrows, cols: ncols, data }
    }

    pub fn from_fn(field: K, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Column vector from a slice.
    pub fn col_vec(field: K, entries: &[K::Elem]) -> Self {
        Matrix { field, rows: entries.len(), cols: 1, data: entries.to_vec() }
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &K::Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K::Elem) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.field.clone(), self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub shape");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| self.field.neg(a)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "mul shape {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        let f = &self.field;
        let mut out = Matrix::zero(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = f.mul(a, other.at(k, j));
                    let cur = f.add(out.at(i, j), &prod);
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Apply to a column vector given as a slice.
    pub fn apply(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(self.cols, v.len(), "apply shape");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for j in 0..self.cols {
                    if !f.is_zero(self.at(i, j)) {
                        acc = f.add(&acc, &f.mul(self.at(i, j), &v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn row(&self, i: usize) -> Vec<K::Elem> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<K::Elem> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(self.field.clone(), self.rows, idx.len(), |i, j| self.at(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(self.field.clone(), idx.len(), self.cols, |i, j| self.at(idx[i], j).clone())
    }

    /// Horizontal concatenation; all blocks must share the row count.
    pub fn hstack(field: K, blocks: &[&Matrix<K>]) -> Self {
        if blocks.is_empty() {
            return Matrix::zero(field, 0, 0);
        }
        let rows = blocks[0].rows;
        assert!(blocks.iter().all(|b| b.rows == rows), "hstack rows");
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out.set(i, off + j, b.at(i, j).clone());
                }
            }
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks must share the column count.
    pub fn vstack(field: K, blocks: &[&Matrix<K>]) -> Self {
        if blocks.is_empty() {
            return Matrix::zero(field, 0, 0);
        }
        let cols = blocks[0].cols;
        assert!(blocks.iter().all(|b| b.cols == cols), "vstack cols");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..cols {
                    out.set(off + i, j, b.at(i, j).clone());
                }
            }
            off += b.rows;
        }
        out
    }

    pub fn block_diag(field: K, blocks: &[&Matrix<K>]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(ro + i, co + j, b.at(i, j).clone());
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    /// Gauss-Jordan reduction. Pivot rule: leftmost column, first nonzero row.
    pub fn rref(&self) -> Rref<K> {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.at(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let a = m.at(r, j).clone();
                    let b = m.at(pr, j).clone();
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = f.inv(m.at(r, c)).expect("pivot nonzero");
            for j in 0..m.cols {
                let v = f.mul(m.at(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.at(i, c)) {
                    continue;
                }
                let factor = m.at(i, c).clone();
                for j in 0..m.cols {
                    let v = f.sub(m.at(i, j), &f.mul(&factor, m.at(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { mat: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Columns form a basis of the right kernel {x : Ax = 0}.
    /// Shape: cols x nullity. Deterministic (free variables in column order).
    pub fn kernel_basis(&self) -> Matrix<K> {
        let f = self.field.clone();
        let Rref { mat, pivots } = self.rref();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivot_set[*j]).collect();
        let mut out = Matrix::zero(f.clone(), self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, f.one());
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(mat.at(r, fc)));
            }
        }
        out
    }

    /// Columns of the result are a basis of the column space: the columns of
    /// `self` at the pivot positions of the RREF.
    pub fn image_basis(&self) -> Matrix<K> {
        let piv = self.rref().pivots;
        self.select_cols(&piv)
    }

    /// Solve A x = b for each column of `b`; returns None if any column is
    /// inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &Matrix<K>) -> Option<Matrix<K>> {
        assert_eq!(self.rows, b.rows, "solve shape");
        let f = self.field.clone();
        let aug = Matrix::hstack(f.clone(), &[self, b]);
        let Rref { mat, pivots } = aug.rref();
        // A pivot in the augmented block means some column is inconsistent.
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zero(f, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, mat.at(r, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix<K>> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(self.field.clone(), self.rows);
        let x = self.solve(&id)?;
        if self.mul(&x) == id {
            Some(x)
        } else {
            None
        }
    }
}

/// Projection matrix onto a complement of a subspace.
///
/// `subspace` has `ambient` rows; its columns span W <= k^ambient. The result
/// Q has shape (ambient - rank W) x ambient, satisfies Q w = 0 for w in W,
/// and has full row rank, so it represents k^ambient / W in coordinates.
pub fn quotient_projection<K: Field>(ambient: usize, subspace: &Matrix<K>) -> Matrix<K> {
    assert_eq!(subspace.rows(), ambient, "subspace ambient mismatch");
    subspace.transpose().kernel_basis().transpose()
}

/// Row-operation record for repeatedly expressing vectors over a fixed matrix.
///
/// Stores the reduction of [A | I]; `express(b)` then answers "is b in the
/// column space of A, and with what coordinates" in O(rows * cols) per call.
pub struct LinSolver<K: Field> {
    field: K,
    cols: usize,
    rows: usize,
    transform: Matrix<K>,
    pivots: Vec<usize>,
}

impl<K: Field> LinSolver<K> {
    pub fn new(a: &Matrix<K>) -> Self {
        let f = a.field().clone();
        let id = Matrix::identity(f.clone(), a.rows());
        let aug = Matrix::hstack(f.clone(), &[a, &id]);
        let Rref { mat, pivots } = aug.rref();
        let a_pivots: Vec<usize> = pivots.iter().copied().filter(|&p| p < a.cols()).collect();
        let transform = Matrix::from_fn(f.clone(), a.rows(), a.rows(), |i, j| {
            mat.at(i, a.cols() + j).clone()
        });
        LinSolver { field: f, cols: a.cols(), rows: a.rows(), transform, pivots: a_pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Coordinates x with A x = b, or None if b is outside the column space.
    pub fn express(&self, b: &[K::Elem]) -> Option<Vec<K::Elem>> {
        assert_eq!(b.len(), self.rows, "express shape");
        let c = self.transform.apply(b);
        // Rows past the rank must vanish for consistency.
        if c[self.pivots.len()..].iter().any(|v| !self.field.is_zero(v)) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &pc) in self.pivots.iter().enumerate() {
            x[pc] = c[r].clone();
        }
        Some(x)
    }
}
