//! Arithmetic strategies behind the executor.
//!
//! A backend is a [`Kernels`] implementation bound to one storage format. The
//! executor only talks to the trait, so further kinds (accelerators, other
//! sparse formats) slot in by adding a [`BackendKind`] variant and a kernel set.

use core::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, SparseMatrix, Split, Vector};

/// Default dense budget, in complex entries of one full operator.
pub const DEFAULT_MEMORY_BUDGET: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BackendKind {
    /// Plain dense arrays, no structure exploited.
    Dense,
    /// Only nonzero entries are stored and visited.
    #[default]
    Sparse,
}

impl BackendKind {
    pub fn name(self) -> &'static str {
        match self {
            BackendKind::Dense => "dense",
            BackendKind::Sparse => "sparse",
        }
    }
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for BackendKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(BackendKind::Dense),
            "sparse" => Ok(BackendKind::Sparse),
            other => Err(Error::Parameter(alloc::format!("unknown backend {other:?}"))),
        }
    }
}

/// Kernel contract shared by every backend.
pub trait Kernels: Send + Sync {
    fn kind(&self) -> BackendKind;

    /// Converts an operator into this backend's storage format.
    fn adopt(&self, m: &Matrix) -> Result<Matrix>;

    fn adopt_vector(&self, v: Vector) -> Vector;

    fn identity(&self, n: usize) -> Result<Matrix>;

    fn kron(&self, a: &Matrix, b: &Matrix) -> Result<Matrix>;

    fn matmul(&self, a: &Matrix, b: &Matrix) -> Result<Matrix>;

    fn matvec(&self, a: &Matrix, v: &Vector) -> Result<Vector>;

    fn basis_vector(&self, n: usize, k: usize) -> Result<Vector> {
        Ok(self.adopt_vector(linalg::basis_vector(n, k)?))
    }

    /// `(I ⊗ op ⊗ I) · v` without forming the full operator.
    fn apply_local(&self, op: &Matrix, split: Split, v: &Vector) -> Result<Vector>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DenseKernels;

#[derive(Debug, Clone, Copy, Default)]
pub struct SparseKernels;

impl Kernels for DenseKernels {
    fn kind(&self) -> BackendKind {
        BackendKind::Dense
    }

    fn adopt(&self, m: &Matrix) -> Result<Matrix> {
        m.to_dense().map(Matrix::Dense)
    }

    fn adopt_vector(&self, v: Vector) -> Vector {
        Vector::Dense(v.into_dense())
    }

    fn identity(&self, n: usize) -> Result<Matrix> {
        linalg::DenseMatrix::identity(n).map(Matrix::Dense)
    }

    fn kron(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        linalg::kron(&self.adopt(a)?, &self.adopt(b)?)
    }

    fn matmul(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        linalg::matmul(&self.adopt(a)?, &self.adopt(b)?)
    }

    fn matvec(&self, a: &Matrix, v: &Vector) -> Result<Vector> {
        linalg::matvec(&self.adopt(a)?, &self.adopt_vector(v.clone()))
    }

    fn apply_local(&self, op: &Matrix, split: Split, v: &Vector) -> Result<Vector> {
        linalg::apply_local(&self.adopt(op)?, split, &self.adopt_vector(v.clone()))
    }
}

impl Kernels for SparseKernels {
    fn kind(&self) -> BackendKind {
        BackendKind::Sparse
    }

    fn adopt(&self, m: &Matrix) -> Result<Matrix> {
        Ok(Matrix::Sparse(m.to_sparse()))
    }

    fn adopt_vector(&self, v: Vector) -> Vector {
        Vector::Sparse(v.into_sparse())
    }

    fn identity(&self, n: usize) -> Result<Matrix> {
        Ok(Matrix::Sparse(SparseMatrix::identity(n)))
    }

    fn kron(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        match (a, b) {
            (Matrix::Sparse(_), Matrix::Sparse(_)) => linalg::kron(a, b),
            _ => linalg::kron(&self.adopt(a)?, &self.adopt(b)?),
        }
    }

    fn matmul(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        match (a, b) {
            (Matrix::Sparse(_), Matrix::Sparse(_)) => linalg::matmul(a, b),
            _ => linalg::matmul(&self.adopt(a)?, &self.adopt(b)?),
        }
    }

    fn matvec(&self, a: &Matrix, v: &Vector) -> Result<Vector> {
        match (a, v) {
            (Matrix::Sparse(_), Vector::Sparse(_)) => linalg::matvec(a, v),
            _ => linalg::matvec(&self.adopt(a)?, &self.adopt_vector(v.clone())),
        }
    }

    fn apply_local(&self, op: &Matrix, split: Split, v: &Vector) -> Result<Vector> {
        match v {
            Vector::Sparse(_) => linalg::apply_local(op, split, v),
            _ => linalg::apply_local(op, split, &self.adopt_vector(v.clone())),
        }
    }
}

static DENSE: DenseKernels = DenseKernels;
static SPARSE: SparseKernels = SparseKernels;

pub fn select_backend(kind: BackendKind) -> &'static dyn Kernels {
    match kind {
        BackendKind::Dense => &DENSE,
        BackendKind::Sparse => &SPARSE,
    }
}

/// Refuses work the backend cannot hold: dense needs `state_dim²` entries
/// within `budget`; sparse only needs representable indices.
pub fn capacity_check(kind: BackendKind, state_dim: usize, budget: u64) -> Result<()> {
    let (required, available) = match kind {
        BackendKind::Dense => ((state_dim as u128) * (state_dim as u128), budget as u128),
        BackendKind::Sparse => (state_dim as u128 + 1, isize::MAX as u128),
    };
    if required > available {
        return Err(Error::Capacity {
            kind,
            state_dim,
            required,
            available,
        });
    }
    Ok(())
}

/// A backend choice plus its memory budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Backend {
    pub kind: BackendKind,
    pub memory_budget: u64,
}

impl Backend {
    pub fn new(kind: BackendKind) -> Self {
        Self {
            kind,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }

    pub fn dense() -> Self {
        Self::new(BackendKind::Dense)
    }

    pub fn sparse() -> Self {
        Self::new(BackendKind::Sparse)
    }

    pub fn with_budget(mut self, memory_budget: u64) -> Self {
        self.memory_budget = memory_budget;
        self
    }

    pub fn kernels(&self) -> &'static dyn Kernels {
        select_backend(self.kind)
    }

    pub fn check(&self, state_dim: usize) -> Result<()> {
        capacity_check(self.kind, state_dim, self.memory_budget)
    }
}

impl Default for Backend {
    fn default() -> Self {
        Self::sparse()
    }
}

impl From<BackendKind> for Backend {
    fn from(kind: BackendKind) -> Self {
        Self::new(kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Complex, SparseVector};
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn random(rng: &mut StdRng, n: usize) -> Matrix {
        let mut t = alloc::vec::Vec::new();
        for r in 0..n {
            for c in 0..n {
                if rng.gen_bool(0.3) {
                    t.push((r, c, Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))));
                }
            }
        }
        Matrix::Sparse(SparseMatrix::from_triplets(n, n, t).unwrap())
    }

    #[test]
    fn kernels_agree_across_backends() {
        let mut rng = StdRng::seed_from_u64(11);
        let (dense, sparse) = (select_backend(BackendKind::Dense), select_backend(BackendKind::Sparse));
        for _ in 0..20 {
            let n = rng.gen_range(1..=12);
            let (a, b) = (random(&mut rng, n), random(&mut rng, n));
            let dk = dense.kron(&a, &b).unwrap();
            let sk = sparse.kron(&a, &b).unwrap();
            assert!(!dk.is_sparse() && sk.is_sparse());
            assert!(linalg::max_abs_diff(&dk, &sk).unwrap() < 1e-12);

            let dm = dense.matmul(&a, &b).unwrap();
            let sm = sparse.matmul(&a, &b).unwrap();
            assert!(linalg::max_abs_diff(&dm, &sm).unwrap() < 1e-12);

            let v = Vector::Sparse(
                SparseVector::from_entries(n, (0..n).map(|i| (i, Complex::new(i as f64, 1.0))).collect()).unwrap(),
            );
            let dv = dense.matvec(&a, &v).unwrap();
            let sv = sparse.matvec(&a, &v).unwrap();
            assert!(matches!(dv, Vector::Dense(_)) && matches!(sv, Vector::Sparse(_)));
            assert!(dv.max_abs_diff(&sv).unwrap() < 1e-12);
        }
    }

    #[test]
    fn permutation_products_stay_sparse() {
        let kernels = select_backend(BackendKind::Sparse);
        let n = 1024;
        let shift: alloc::vec::Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let swap: alloc::vec::Vec<usize> = (0..n).map(|i| i ^ 5).collect();
        let p = Matrix::Sparse(SparseMatrix::permutation(&shift).unwrap());
        let q = Matrix::Sparse(SparseMatrix::permutation(&swap).unwrap());
        let mut acc = p.clone();
        for _ in 0..5 {
            acc = kernels.matmul(&acc, &q).unwrap();
            acc = kernels.matmul(&acc, &p).unwrap();
            assert_eq!(acc.stored(), n);
        }
    }

    #[test]
    fn capacity_examples() {
        assert!(capacity_check(BackendKind::Dense, 24, DEFAULT_MEMORY_BUDGET).is_ok());
        let err = capacity_check(BackendKind::Dense, 59049, DEFAULT_MEMORY_BUDGET).unwrap_err();
        match err {
            Error::Capacity {
                required, available, ..
            } => {
                assert_eq!(required, 59049u128 * 59049);
                assert_eq!(available, 1u128 << 31);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(capacity_check(BackendKind::Sparse, 3usize.pow(20), DEFAULT_MEMORY_BUDGET).is_ok());
        assert!(capacity_check(BackendKind::Dense, 3usize.pow(20), DEFAULT_MEMORY_BUDGET).is_err());
        assert!(capacity_check(BackendKind::Sparse, usize::MAX, DEFAULT_MEMORY_BUDGET).is_err());
        assert!(capacity_check(BackendKind::Dense, 59049, 59049 * 59049).is_ok());
    }

    #[test]
    fn backend_names_round_trip() {
        for kind in [BackendKind::Dense, BackendKind::Sparse] {
            assert_eq!(kind.name().parse::<BackendKind>().unwrap(), kind);
        }
        assert!("cuda".parse::<BackendKind>().is_err());
        assert_eq!(Backend::default().kind, BackendKind::Sparse);
    }
}
