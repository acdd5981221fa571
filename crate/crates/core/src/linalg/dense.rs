use alloc::vec;
use alloc::vec::Vec;

use super::{checked_mul, is_finite, Complex, SparseMatrix, ONE, ZERO};
use crate::error::{Error, Result};

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        let len = checked_mul(rows, cols, "dense matrix size")?;
        if data.len() != len {
            return Err(Error::Shape {
                op: "dense matrix data",
                lhs: (rows, cols),
                rhs: (data.len(), 1),
            });
        }
        if !data.iter().all(is_finite) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        let len = checked_mul(rows, cols, "dense matrix size")?;
        Ok(Self {
            rows,
            cols,
            data: vec![ZERO; len],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        Ok(m)
    }

    /// Builds a matrix from nested rows. Panics on ragged input; meant for
    /// literals in tests and small hand-written gates.
    pub fn from_rows(rows: &[&[Complex]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::new(rows.len(), cols, rows.iter().flat_map(|r| r.iter().copied()).collect())
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
    pub fn data(&self) -> &[Complex] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex) {
        self.data[row * self.cols + col] = value;
    }

    pub fn kron(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        let rows = checked_mul(self.rows, other.rows, "kron rows")?;
        let cols = checked_mul(self.cols, other.cols, "kron cols")?;
        let mut out = DenseMatrix::zeros(rows, cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    let dst = (i * other.rows + k) * cols + j * other.cols;
                    let src = &other.data[k * other.cols..(k + 1) * other.cols];
                    for (d, &b) in out.data[dst..dst + other.cols].iter_mut().zip(src) {
                        *d = a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape {
                op: "matmul",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        let mut out = DenseMatrix::zeros(self.rows, other.cols)?;
        let n = other.cols;
        for i in 0..self.rows {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(&other.data[k * n..(k + 1) * n]) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[Complex]) -> Result<Vec<Complex>> {
        if self.cols != v.len() {
            return Err(Error::Shape {
                op: "matvec",
                lhs: self.shape(),
                rhs: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).map(|(&a, &x)| a * x).sum()
            })
            .collect())
    }

    pub fn dagger(&self) -> DenseMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).conj());
            }
        }
        DenseMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        SparseMatrix::from_dense(self)
    }
}
