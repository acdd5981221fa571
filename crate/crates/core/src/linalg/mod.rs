//! Complex dense and sparse kernels.
//!
//! Operators live in compressed-row form ([`SparseMatrix`]) or row-major dense
//! form ([`DenseMatrix`]); state vectors are sorted coordinates
//! ([`SparseVector`]) or plain dense arrays. The free functions dispatch on
//! [`Matrix`] and [`Vector`]: sparse inputs stay sparse, any dense operand
//! yields a dense result.

mod dense;
mod sparse;

use alloc::vec;
use alloc::vec::Vec;

pub use dense::DenseMatrix;
pub use sparse::{SparseMatrix, SparseVector};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);

/// Sparse entries with magnitude below this are dropped after arithmetic.
pub const PRUNE_THRESHOLD: f64 = 1e-15;

#[inline]
pub(crate) fn keep(v: Complex) -> bool {
    v.norm_sqr() >= PRUNE_THRESHOLD * PRUNE_THRESHOLD
}

#[inline]
pub(crate) fn is_finite(v: &Complex) -> bool {
    v.re.is_finite() && v.im.is_finite()
}

#[inline]
pub(crate) fn checked_mul(a: usize, b: usize, what: &'static str) -> Result<usize> {
    a.checked_mul(b).ok_or(Error::Overflow { what })
}

/// Product of a list of dimensions, failing on overflow.
pub fn checked_product(dims: &[usize]) -> Result<usize> {
    dims.iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .ok_or(Error::Overflow {
            what: "dimension product",
        })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Matrix {
    Dense(DenseMatrix),
    Sparse(SparseMatrix),
}

impl Matrix {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            Matrix::Dense(m) => m.shape(),
            Matrix::Sparse(m) => m.shape(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Complex {
        match self {
            Matrix::Dense(m) => m.get(r, c),
            Matrix::Sparse(m) => m.get(r, c),
        }
    }

    /// Stored entries (nonzeros for sparse, every entry for dense).
    pub fn stored(&self) -> usize {
        match self {
            Matrix::Dense(m) => m.data().len(),
            Matrix::Sparse(m) => m.nnz(),
        }
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self, Matrix::Sparse(_))
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        match self {
            Matrix::Dense(m) => m.to_sparse(),
            Matrix::Sparse(m) => m.clone(),
        }
    }

    pub fn to_dense(&self) -> Result<DenseMatrix> {
        match self {
            Matrix::Dense(m) => Ok(m.clone()),
            Matrix::Sparse(m) => m.to_dense(),
        }
    }

    pub fn into_sparse(self) -> SparseMatrix {
        match self {
            Matrix::Dense(m) => m.to_sparse(),
            Matrix::Sparse(m) => m,
        }
    }

    pub fn into_dense(self) -> Result<DenseMatrix> {
        match self {
            Matrix::Dense(m) => Ok(m),
            Matrix::Sparse(m) => m.to_dense(),
        }
    }

    /// Column-wise view: for every column, its nonzero `(row, value)` pairs.
    pub(crate) fn columns(&self) -> Vec<Vec<(usize, Complex)>> {
        let (rows, cols) = self.shape();
        let mut out = vec![Vec::new(); cols];
        match self {
            Matrix::Sparse(m) => {
                for r in 0..rows {
                    for (c, v) in m.row(r) {
                        out[c].push((r, v));
                    }
                }
            }
            Matrix::Dense(m) => {
                for r in 0..rows {
                    for (c, col) in out.iter_mut().enumerate() {
                        let v = m.get(r, c);
                        if v != ZERO {
                            col.push((r, v));
                        }
                    }
                }
            }
        }
        out
    }
}

impl From<DenseMatrix> for Matrix {
    fn from(m: DenseMatrix) -> Self {
        Matrix::Dense(m)
    }
}

impl From<SparseMatrix> for Matrix {
    fn from(m: SparseMatrix) -> Self {
        Matrix::Sparse(m)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Vector {
    Dense(Vec<Complex>),
    Sparse(SparseVector),
}

impl Vector {
    pub fn len(&self) -> usize {
        match self {
            Vector::Dense(v) => v.len(),
            Vector::Sparse(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, index: usize) -> Complex {
        match self {
            Vector::Dense(v) => v[index],
            Vector::Sparse(v) => v.get(index).unwrap_or(ZERO),
        }
    }

    /// Entries at or above the prune threshold, in index order.
    pub fn nonzeros(&self) -> Vec<(usize, Complex)> {
        match self {
            Vector::Dense(v) => v.iter().copied().enumerate().filter(|&(_, x)| keep(x)).collect(),
            Vector::Sparse(v) => v.iter().collect(),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        match self {
            Vector::Dense(v) => v.iter().map(|x| x.norm_sqr()).sum(),
            Vector::Sparse(v) => v.values().iter().map(|x| x.norm_sqr()).sum(),
        }
    }

    pub fn into_sparse(self) -> SparseVector {
        match self {
            Vector::Dense(v) => SparseVector::from_dense(&v),
            Vector::Sparse(v) => v,
        }
    }

    pub fn into_dense(self) -> Vec<Complex> {
        match self {
            Vector::Dense(v) => v,
            Vector::Sparse(v) => v.to_dense(),
        }
    }

    /// `‖a − b‖∞` over all entries.
    pub fn max_abs_diff(&self, other: &Vector) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::Shape {
                op: "max_abs_diff",
                lhs: (self.len(), 1),
                rhs: (other.len(), 1),
            });
        }
        Ok(merged_max_diff(&self.nonzeros(), &other.nonzeros()))
    }
}

/// Largest `|a_k − b_k|` over two sorted coordinate lists, unpruned.
pub(crate) fn merged_max_diff(a: &[(usize, Complex)], b: &[(usize, Complex)]) -> f64 {
    let (mut i, mut j, mut worst) = (0, 0, 0.0f64);
    while i < a.len() || j < b.len() {
        let d = match (a.get(i), b.get(j)) {
            (Some(&(ka, va)), Some(&(kb, vb))) if ka == kb => {
                i += 1;
                j += 1;
                va - vb
            }
            (Some(&(ka, va)), Some(&(kb, _))) if ka < kb => {
                i += 1;
                va
            }
            (Some(&(_, va)), None) => {
                i += 1;
                va
            }
            (_, Some(&(_, vb))) => {
                j += 1;
                vb
            }
            (None, None) => unreachable!(),
        };
        worst = worst.max(d.norm());
    }
    worst
}

impl From<SparseVector> for Vector {
    fn from(v: SparseVector) -> Self {
        Vector::Sparse(v)
    }
}

pub fn kron(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    match (a, b) {
        (Matrix::Sparse(a), Matrix::Sparse(b)) => a.kron(b).map(Matrix::Sparse),
        (Matrix::Dense(a), Matrix::Dense(b)) => a.kron(b).map(Matrix::Dense),
        (Matrix::Dense(a), Matrix::Sparse(b)) => a.kron(&b.to_dense()?).map(Matrix::Dense),
        (Matrix::Sparse(a), Matrix::Dense(b)) => a.to_dense()?.kron(b).map(Matrix::Dense),
    }
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    match (a, b) {
        (Matrix::Sparse(a), Matrix::Sparse(b)) => a.matmul(b).map(Matrix::Sparse),
        (Matrix::Dense(a), Matrix::Dense(b)) => a.matmul(b).map(Matrix::Dense),
        (Matrix::Dense(a), Matrix::Sparse(b)) => a.matmul(&b.to_dense()?).map(Matrix::Dense),
        (Matrix::Sparse(a), Matrix::Dense(b)) => a.to_dense()?.matmul(b).map(Matrix::Dense),
    }
}

pub fn matvec(a: &Matrix, v: &Vector) -> Result<Vector> {
    match (a, v) {
        (Matrix::Sparse(a), Vector::Sparse(v)) => a.matvec(v).map(Vector::Sparse),
        (Matrix::Sparse(a), Vector::Dense(v)) => a.matvec_dense(v).map(Vector::Dense),
        (Matrix::Dense(a), Vector::Dense(v)) => a.matvec(v).map(Vector::Dense),
        (Matrix::Dense(a), Vector::Sparse(v)) => a.matvec(&v.to_dense()).map(Vector::Dense),
    }
}

pub fn dagger(a: &Matrix) -> Matrix {
    match a {
        Matrix::Dense(m) => Matrix::Dense(m.dagger()),
        Matrix::Sparse(m) => Matrix::Sparse(m.dagger()),
    }
}

pub fn identity(n: usize) -> Matrix {
    Matrix::Sparse(SparseMatrix::identity(n))
}

pub fn basis_vector(n: usize, k: usize) -> Result<Vector> {
    SparseVector::basis(n, k).map(Vector::Sparse)
}

/// `‖a − b‖∞` over all entries.
pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::Shape {
            op: "max_abs_diff",
            lhs: a.shape(),
            rhs: b.shape(),
        });
    }
    match (a, b) {
        (Matrix::Sparse(a), Matrix::Sparse(b)) => a.max_abs_diff(b),
        _ => {
            let (a, b) = (a.to_dense()?, b.to_dense()?);
            Ok(a.data()
                .iter()
                .zip(b.data())
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max))
        }
    }
}

/// Shape of a register split around a contiguous block of wires: the state
/// index factors as `(outer · local + l) · inner + i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Split {
    pub outer: usize,
    pub local: usize,
    pub inner: usize,
}

impl Split {
    pub fn total(&self) -> Option<usize> {
        self.outer.checked_mul(self.local)?.checked_mul(self.inner)
    }
}

/// Applies `I_outer ⊗ op ⊗ I_inner` to `v` without forming the Kronecker
/// product.
pub fn apply_local(op: &Matrix, split: Split, v: &Vector) -> Result<Vector> {
    let Split { outer, local, inner } = split;
    if op.shape() != (local, local) || split.total() != Some(v.len()) {
        return Err(Error::Shape {
            op: "apply_local",
            lhs: op.shape(),
            rhs: (v.len(), 1),
        });
    }
    let columns = op.columns();
    match v {
        Vector::Dense(x) => {
            let mut out = vec![ZERO; x.len()];
            for o in 0..outer {
                for i in 0..inner {
                    for (l, col) in columns.iter().enumerate() {
                        let xv = x[(o * local + l) * inner + i];
                        if xv == ZERO {
                            continue;
                        }
                        for &(r, a) in col {
                            out[(o * local + r) * inner + i] += a * xv;
                        }
                    }
                }
            }
            Ok(Vector::Dense(out))
        }
        Vector::Sparse(x) => {
            let mut entries = Vec::with_capacity(x.nnz());
            for (idx, xv) in x.iter() {
                let i = idx % inner;
                let l = (idx / inner) % local;
                let o = idx / inner / local;
                for &(r, a) in &columns[l] {
                    entries.push(((o * local + r) * inner + i, a * xv));
                }
            }
            SparseVector::from_entries(x.len(), entries).map(Vector::Sparse)
        }
    }
}
