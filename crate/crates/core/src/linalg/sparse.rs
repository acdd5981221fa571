use alloc::vec;
use alloc::vec::Vec;

use super::{checked_mul, is_finite, keep, Complex, DenseMatrix, ONE, ZERO};
use crate::error::{Error, Result};

/// Compressed-row complex matrix.
///
/// Column indices are strictly increasing within a row and no stored value
/// falls below the prune threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<Complex>,
}

impl SparseMatrix {
    /// Validates raw compressed-row arrays.
    pub fn from_csr(
        rows: usize,
        cols: usize,
        indptr: Vec<usize>,
        indices: Vec<usize>,
        values: Vec<Complex>,
    ) -> Result<Self> {
        let bad = |what: &str| Error::Parameter(alloc::format!("malformed csr: {what}"));
        if indptr.len() != rows + 1 || indptr[0] != 0 {
            return Err(bad("row offsets"));
        }
        if indptr.windows(2).any(|w| w[0] > w[1]) || indptr[rows] != indices.len() {
            return Err(bad("row offsets"));
        }
        if indices.len() != values.len() {
            return Err(bad("index/value length"));
        }
        for r in 0..rows {
            let cols_in_row = &indices[indptr[r]..indptr[r + 1]];
            if cols_in_row.windows(2).any(|w| w[0] >= w[1]) || cols_in_row.iter().any(|&c| c >= cols) {
                return Err(bad("column indices"));
            }
        }
        if !values.iter().all(is_finite) {
            return Err(Error::NonFinite);
        }
        let mut m = Self {
            rows,
            cols,
            indptr,
            indices,
            values,
        };
        m.prune();
        Ok(m)
    }

    /// Builds from unsorted `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets(rows: usize, cols: usize, mut triplets: Vec<(usize, usize, Complex)>) -> Result<Self> {
        for &(r, c, v) in &triplets {
            if r >= rows {
                return Err(Error::IndexOutOfRange { index: r, len: rows });
            }
            if c >= cols {
                return Err(Error::IndexOutOfRange { index: c, len: cols });
            }
            if !is_finite(&v) {
                return Err(Error::NonFinite);
            }
        }
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut indptr = vec![0usize; rows + 1];
        let mut indices = Vec::with_capacity(triplets.len());
        let mut values: Vec<Complex> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
            } else {
                indices.push(c);
                values.push(v);
                indptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for r in 0..rows {
            indptr[r + 1] += indptr[r];
        }
        let mut m = Self {
            rows,
            cols,
            indptr,
            indices,
            values,
        };
        m.prune();
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            indptr: (0..=n).collect(),
            indices: (0..n).collect(),
            values: vec![ONE; n],
        }
    }

    pub fn diagonal(diag: &[Complex]) -> Result<Self> {
        let n = diag.len();
        Self::from_csr(n, n, (0..=n).collect(), (0..n).collect(), diag.to_vec())
    }

    /// Permutation matrix sending basis column `c` to row `image[c]`.
    pub fn permutation(image: &[usize]) -> Result<Self> {
        let n = image.len();
        let mut triplets = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for (c, &r) in image.iter().enumerate() {
            if r >= n || seen[r] {
                return Err(Error::Parameter(alloc::format!("not a permutation at column {c}")));
            }
            seen[r] = true;
            triplets.push((r, c, ONE));
        }
        Self::from_triplets(n, n, triplets)
    }

    pub fn from_dense(dense: &DenseMatrix) -> Self {
        let (rows, cols) = dense.shape();
        let mut indptr = Vec::with_capacity(rows + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for r in 0..rows {
            for c in 0..cols {
                let v = dense.get(r, c);
                if keep(v) {
                    indices.push(c);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        Self {
            rows,
            cols,
            indptr,
            indices,
            values,
        }
    }

    pub fn to_dense(&self) -> Result<DenseMatrix> {
        let mut out = DenseMatrix::zeros(self.rows, self.cols)?;
        for r in 0..self.rows {
            for (c, v) in self.row(r) {
                out.set(r, c, v);
            }
        }
        Ok(out)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn indptr(&self) -> &[usize] {
        &self.indptr
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    /// Nonzero `(col, value)` pairs of one row, in column order.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, Complex)> + '_ {
        let span = self.indptr[r]..self.indptr[r + 1];
        self.indices[span.clone()]
            .iter()
            .copied()
            .zip(self.values[span].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> Complex {
        let span = self.indptr[r]..self.indptr[r + 1];
        match self.indices[span.clone()].binary_search(&c) {
            Ok(pos) => self.values[span.start + pos],
            Err(_) => ZERO,
        }
    }

    fn prune(&mut self) {
        if self.values.iter().all(|&v| keep(v)) {
            return;
        }
        let mut w = 0;
        let mut start = 0;
        for r in 0..self.rows {
            let end = self.indptr[r + 1];
            for k in start..end {
                if keep(self.values[k]) {
                    self.indices[w] = self.indices[k];
                    self.values[w] = self.values[k];
                    w += 1;
                }
            }
            start = end;
            self.indptr[r + 1] = w;
        }
        self.indices.truncate(w);
        self.values.truncate(w);
    }

    pub fn kron(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        let rows = checked_mul(self.rows, other.rows, "kron rows")?;
        let cols = checked_mul(self.cols, other.cols, "kron cols")?;
        let nnz = checked_mul(self.nnz(), other.nnz(), "kron nonzeros")?;
        let mut indptr = Vec::with_capacity(rows + 1);
        let mut indices = Vec::with_capacity(nnz);
        let mut values = Vec::with_capacity(nnz);
        indptr.push(0);
        for i in 0..self.rows {
            for k in 0..other.rows {
                for (j, a) in self.row(i) {
                    for (l, b) in other.row(k) {
                        let v = a * b;
                        if keep(v) {
                            indices.push(j * other.cols + l);
                            values.push(v);
                        }
                    }
                }
                indptr.push(indices.len());
            }
        }
        Ok(SparseMatrix {
            rows,
            cols,
            indptr,
            indices,
            values,
        })
    }

    /// Row-by-row product with a dense accumulator (Gustavson).
    pub fn matmul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape {
                op: "matmul",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        let mut acc = vec![ZERO; other.cols];
        let mut occupied = vec![false; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut indptr = Vec::with_capacity(self.rows + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for i in 0..self.rows {
            for (k, a) in self.row(i) {
                for (j, b) in other.row(k) {
                    if !occupied[j] {
                        occupied[j] = true;
                        touched.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            touched.sort_unstable();
            for &j in &touched {
                let v = core::mem::replace(&mut acc[j], ZERO);
                occupied[j] = false;
                if keep(v) {
                    indices.push(j);
                    values.push(v);
                }
            }
            touched.clear();
            indptr.push(indices.len());
        }
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            indptr,
            indices,
            values,
        })
    }

    pub fn matvec(&self, v: &SparseVector) -> Result<SparseVector> {
        if self.cols != v.len() {
            return Err(Error::Shape {
                op: "matvec",
                lhs: self.shape(),
                rhs: (v.len(), 1),
            });
        }
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for r in 0..self.rows {
            let mut sum = ZERO;
            for (c, a) in self.row(r) {
                if let Some(x) = v.get(c) {
                    sum += a * x;
                }
            }
            if keep(sum) {
                indices.push(r);
                values.push(sum);
            }
        }
        Ok(SparseVector {
            len: self.rows,
            indices,
            values,
        })
    }

    pub fn matvec_dense(&self, v: &[Complex]) -> Result<Vec<Complex>> {
        if self.cols != v.len() {
            return Err(Error::Shape {
                op: "matvec",
                lhs: self.shape(),
                rhs: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).map(|(c, a)| a * v[c]).sum())
            .collect())
    }

    /// Conjugate transpose via a counting pass over columns.
    pub fn dagger(&self) -> SparseMatrix {
        let mut indptr = vec![0usize; self.cols + 1];
        for &c in &self.indices {
            indptr[c + 1] += 1;
        }
        for c in 0..self.cols {
            indptr[c + 1] += indptr[c];
        }
        let mut next = indptr.clone();
        let mut indices = vec![0usize; self.nnz()];
        let mut values = vec![ZERO; self.nnz()];
        for r in 0..self.rows {
            for (c, v) in self.row(r) {
                let slot = next[c];
                indices[slot] = r;
                values[slot] = v.conj();
                next[c] += 1;
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            indptr,
            indices,
            values,
        }
    }

    /// `self + scale * other`, pruning cancellations.
    pub fn add_scaled(&self, other: &SparseMatrix, scale: Complex) -> Result<SparseMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::Shape {
                op: "add",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        let mut indptr = Vec::with_capacity(self.rows + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for r in 0..self.rows {
            let mut a = self.row(r).peekable();
            let mut b = other.row(r).map(|(c, v)| (c, v * scale)).peekable();
            loop {
                let (c, v) = match (a.peek(), b.peek()) {
                    (None, None) => break,
                    (Some(_), None) => a.next().unwrap(),
                    (None, Some(_)) => b.next().unwrap(),
                    (Some(&(ca, va)), Some(&(cb, vb))) => {
                        if ca < cb {
                            a.next().unwrap()
                        } else if cb < ca {
                            b.next().unwrap()
                        } else {
                            a.next();
                            b.next();
                            (ca, va + vb)
                        }
                    }
                };
                if keep(v) {
                    indices.push(c);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        Ok(SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            indptr,
            indices,
            values,
        })
    }

    /// Largest entrywise deviation between two sparse matrices of equal shape.
    pub fn max_abs_diff(&self, other: &SparseMatrix) -> Result<f64> {
        if self.shape() != other.shape() {
            return Err(Error::Shape {
                op: "max_abs_diff",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        let mut worst = 0.0f64;
        for r in 0..self.rows {
            let a: Vec<_> = self.row(r).collect();
            let b: Vec<_> = other.row(r).collect();
            worst = worst.max(super::merged_max_diff(&a, &b));
        }
        Ok(worst)
    }
}

/// Sparse column vector stored as sorted `(index, value)` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector {
    len: usize,
    indices: Vec<usize>,
    values: Vec<Complex>,
}

impl SparseVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            indices: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn basis(len: usize, k: usize) -> Result<Self> {
        if k >= len {
            return Err(Error::IndexOutOfRange { index: k, len });
        }
        Ok(Self {
            len,
            indices: vec![k],
            values: vec![ONE],
        })
    }

    /// Builds from unsorted coordinates, summing duplicates and pruning.
    pub fn from_entries(len: usize, mut entries: Vec<(usize, Complex)>) -> Result<Self> {
        if let Some(&(index, _)) = entries.iter().find(|(i, _)| *i >= len) {
            return Err(Error::IndexOutOfRange { index, len });
        }
        if !entries.iter().all(|(_, v)| is_finite(v)) {
            return Err(Error::NonFinite);
        }
        entries.sort_unstable_by_key(|e| e.0);
        let mut indices: Vec<usize> = Vec::with_capacity(entries.len());
        let mut values: Vec<Complex> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            if indices.last() == Some(&i) {
                *values.last_mut().unwrap() += v;
            } else {
                indices.push(i);
                values.push(v);
            }
        }
        let mut out = Self { len, indices, values };
        out.prune();
        Ok(out)
    }

    pub fn from_dense(v: &[Complex]) -> Self {
        let (indices, values) = v
            .iter()
            .enumerate()
            .filter(|(_, &x)| keep(x))
            .map(|(i, &x)| (i, x))
            .unzip();
        Self {
            len: v.len(),
            indices,
            values,
        }
    }

    pub fn to_dense(&self) -> Vec<Complex> {
        let mut out = vec![ZERO; self.len];
        for (i, v) in self.iter() {
            out[i] = v;
        }
        out
    }

    fn prune(&mut self) {
        let mut w = 0;
        for k in 0..self.values.len() {
            if keep(self.values[k]) {
                self.indices[w] = self.indices[k];
                self.values[w] = self.values[k];
                w += 1;
            }
        }
        self.indices.truncate(w);
        self.values.truncate(w);
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    pub fn get(&self, index: usize) -> Option<Complex> {
        self.indices.binary_search(&index).ok().map(|pos| self.values[pos])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Complex)> + '_ {
        self.indices.iter().copied().zip(self.values.iter().copied())
    }
}
