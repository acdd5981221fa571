//! Generalized qudit gates.
//!
//! With `ω = e^{2πi/d}`:
//! - `X^d_{+a}|x⟩ = |(x + a) mod d⟩` for `1 ≤ a ≤ d − 1`
//! - `Z_d = diag(1, ω, …, ω^{d−1})`
//! - `F_d[j, k] = ω^{jk} / √d`
//! - the controlled increment adds `a` to the target only when every control
//!   sits at its top level `d_c − 1`.
//!
//! Permutations and diagonals are built sparse; `F_d` is dense.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{self, checked_product, Complex, DenseMatrix, Matrix, SparseMatrix, ONE, ZERO};

/// Tolerance used when accepting a user supplied matrix as unitary.
pub const CUSTOM_UNITARY_TOLERANCE: f64 = 1e-10;

/// `ω^k` for `ω = e^{2πi/d}`, exact on quarter turns.
pub fn root_of_unity(k: usize, d: usize) -> Complex {
    let k = k % d;
    if (4 * k).is_multiple_of(d) {
        return match 4 * k / d {
            0 => ONE,
            1 => Complex::new(0.0, 1.0),
            2 => Complex::new(-1.0, 0.0),
            _ => Complex::new(0.0, -1.0),
        };
    }
    let theta = 2.0 * core::f64::consts::PI * k as f64 / d as f64;
    Complex::new(libm::cos(theta), libm::sin(theta))
}

/// A square operator together with its total dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary {
    matrix: Matrix,
    dim: usize,
}

impl Unitary {
    /// Accepts a user matrix if it is square, finite and unitary within
    /// [`CUSTOM_UNITARY_TOLERANCE`].
    pub fn new(matrix: Matrix) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols || rows == 0 {
            return Err(Error::Shape {
                op: "unitary",
                lhs: (rows, cols),
                rhs: (cols, rows),
            });
        }
        let u = Self { matrix, dim: rows };
        let deviation = u.unitarity_deviation()?;
        if deviation.is_nan() || deviation >= CUSTOM_UNITARY_TOLERANCE {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(u)
    }

    pub(crate) fn from_trusted(matrix: Matrix) -> Self {
        let dim = matrix.shape().0;
        Self { matrix, dim }
    }

    #[inline]
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    /// `max |U†U − I|`.
    pub fn unitarity_deviation(&self) -> Result<f64> {
        let product = linalg::matmul(&linalg::dagger(&self.matrix), &self.matrix)?;
        linalg::max_abs_diff(&product, &linalg::identity(self.dim))
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::Parameter(format!("dimension must be at least 2, got {d}")));
    }
    Ok(())
}

fn check_shift(d: usize, a: usize) -> Result<()> {
    check_dim(d)?;
    if a == 0 || a >= d {
        return Err(Error::ShiftOutOfRange { shift: a, dim: d });
    }
    Ok(())
}

/// Generalized NOT `X^d_{+a}`.
pub fn x_gate(d: usize, a: usize) -> Result<Unitary> {
    check_shift(d, a)?;
    let image: Vec<usize> = (0..d).map(|x| (x + a) % d).collect();
    Ok(Unitary::from_trusted(SparseMatrix::permutation(&image)?.into()))
}

/// Generalized phase gate `Z_d`.
pub fn z_gate(d: usize) -> Result<Unitary> {
    check_dim(d)?;
    let diag: Vec<Complex> = (0..d).map(|k| root_of_unity(k, d)).collect();
    Ok(Unitary::from_trusted(SparseMatrix::diagonal(&diag)?.into()))
}

/// Generalized Hadamard (discrete Fourier matrix) `F_d`, stored dense.
pub fn h_gate(d: usize) -> Result<Unitary> {
    check_dim(d)?;
    let scale = 1.0 / libm::sqrt(d as f64);
    let mut data = Vec::with_capacity(d * d);
    for j in 0..d {
        for k in 0..d {
            data.push(root_of_unity(j * k, d) * scale);
        }
    }
    Ok(Unitary::from_trusted(DenseMatrix::new(d, d, data)?.into()))
}

/// Controlled increment with the control directly above the target:
/// block-diagonal `diag(I, …, I, X^{d_t}_{+a})`.
pub fn cx_gate(d_control: usize, d_target: usize, a: usize) -> Result<Unitary> {
    mct_gate(&[d_control], d_target, a)
}

/// Multi-controlled increment over `controls ++ [target]`, controls first.
pub fn mct_gate(control_dims: &[usize], d_target: usize, a: usize) -> Result<Unitary> {
    if control_dims.is_empty() {
        return Err(Error::Parameter(
            "multi-controlled gate needs at least one control".into(),
        ));
    }
    for &d in control_dims {
        check_dim(d)?;
    }
    check_shift(d_target, a)?;
    let blocks = checked_product(control_dims)?;
    let dim = linalg::checked_mul(blocks, d_target, "controlled gate dimension")?;
    // The all-top control pattern is the last block.
    let active = blocks - 1;
    let image: Vec<usize> = (0..dim)
        .map(|col| {
            let (block, y) = (col / d_target, col % d_target);
            if block == active {
                block * d_target + (y + a) % d_target
            } else {
                col
            }
        })
        .collect();
    Ok(Unitary::from_trusted(SparseMatrix::permutation(&image)?.into()))
}

/// Embeds a controlled increment over a contiguous span of wires:
/// `U = I + (⊗ᵢ Fᵢ)` where `Fᵢ` is the top-level projector on controls,
/// `X^{d_t}_{+a} − I` on the target and `I` elsewhere.
pub fn embed_controlled(span_dims: &[usize], controls: &[usize], target: usize, a: usize) -> Result<Unitary> {
    let width = span_dims.len();
    if controls.is_empty() {
        return Err(Error::Parameter("controlled gate needs at least one control".into()));
    }
    if target >= width {
        return Err(Error::WireOutOfRange { wire: target, width });
    }
    for &c in controls {
        if c >= width {
            return Err(Error::WireOutOfRange { wire: c, width });
        }
        if c == target {
            return Err(Error::Parameter(format!("control and target coincide at position {c}")));
        }
    }
    let mut sorted = controls.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Parameter("duplicate control positions".into()));
    }
    for &d in span_dims {
        check_dim(d)?;
    }
    check_shift(span_dims[target], a)?;

    let mut flip = Matrix::Sparse(SparseMatrix::identity(1));
    for (pos, &d) in span_dims.iter().enumerate() {
        let factor = if pos == target {
            let x = x_gate(d, a)?.into_matrix().into_sparse();
            x.add_scaled(&SparseMatrix::identity(d), -ONE)?
        } else if controls.contains(&pos) {
            let mut diag = vec![ZERO; d];
            diag[d - 1] = ONE;
            SparseMatrix::diagonal(&diag)?
        } else {
            SparseMatrix::identity(d)
        };
        flip = linalg::kron(&flip, &Matrix::Sparse(factor))?;
    }
    let total = checked_product(span_dims)?;
    let u = SparseMatrix::identity(total).add_scaled(&flip.into_sparse(), ONE)?;
    Ok(Unitary::from_trusted(u.into()))
}

/// Two-wire controlled increment placed anywhere inside a contiguous span
/// (control above or below the target, identities in between).
pub fn embed_two_wire(
    span_dims: &[usize],
    control_position: usize,
    target_position: usize,
    a: usize,
) -> Result<Unitary> {
    embed_controlled(span_dims, &[control_position], target_position, a)
}

pub fn identity_gate(d: usize) -> Result<Unitary> {
    check_dim(d)?;
    Ok(Unitary::from_trusted(linalg::identity(d)))
}

/// What a gate does, with its shift where one applies.
#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    NotX { shift: usize },
    PhaseZ,
    HadamardF,
    ControlledX { shift: usize },
    MultiControlledX { shift: usize },
    Custom(Unitary),
    Identity,
    Measurement,
}

impl GateKind {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::NotX { .. } => "X",
            GateKind::PhaseZ => "Z",
            GateKind::HadamardF => "H",
            GateKind::ControlledX { .. } => "CX",
            GateKind::MultiControlledX { .. } => "MCX",
            GateKind::Custom(_) => "U",
            GateKind::Identity => "I",
            GateKind::Measurement => "M",
        }
    }

    pub fn shift(&self) -> Option<usize> {
        match *self {
            GateKind::NotX { shift } | GateKind::ControlledX { shift } | GateKind::MultiControlledX { shift } => {
                Some(shift)
            }
            _ => None,
        }
    }
}

/// A gate bound to wires. For controlled kinds the target is the last wire.
#[derive(Debug, Clone, PartialEq)]
pub struct GateSpec {
    kind: GateKind,
    wires: Vec<usize>,
    dims: Vec<usize>,
}

impl GateSpec {
    pub fn new(kind: GateKind, wires: Vec<usize>, dims: Vec<usize>) -> Result<Self> {
        if wires.len() != dims.len() {
            return Err(Error::Parameter(format!(
                "{} wires but {} dimensions",
                wires.len(),
                dims.len()
            )));
        }
        for &d in &dims {
            check_dim(d)?;
        }
        let mut sorted = wires.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parameter(format!("gate wires must be distinct, got {wires:?}")));
        }
        let arity_ok = match &kind {
            GateKind::NotX { .. } | GateKind::PhaseZ | GateKind::HadamardF | GateKind::Identity => wires.len() == 1,
            GateKind::ControlledX { .. } => wires.len() == 2,
            GateKind::MultiControlledX { .. } => wires.len() >= 2,
            GateKind::Custom(_) | GateKind::Measurement => !wires.is_empty(),
        };
        if !arity_ok {
            return Err(Error::Parameter(format!(
                "{} cannot act on {} wires",
                kind.name(),
                wires.len()
            )));
        }
        if let Some(shift) = kind.shift() {
            check_shift(*dims.last().unwrap(), shift)?;
        }
        if let GateKind::Custom(u) = &kind {
            if u.dim() != checked_product(&dims)? {
                return Err(Error::Shape {
                    op: "custom gate",
                    lhs: (u.dim(), u.dim()),
                    rhs: (checked_product(&dims)?, checked_product(&dims)?),
                });
            }
            if sorted != wires || sorted.windows(2).any(|w| w[1] != w[0] + 1) {
                return Err(Error::Parameter(format!(
                    "custom gates act on contiguous ascending wires, got {wires:?}"
                )));
            }
        }
        Ok(Self { kind, wires, dims })
    }

    pub fn kind(&self) -> &GateKind {
        &self.kind
    }

    pub fn wires(&self) -> &[usize] {
        &self.wires
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Lowest and highest wire touched.
    pub fn span(&self) -> (usize, usize) {
        let lo = *self.wires.iter().min().unwrap();
        let hi = *self.wires.iter().max().unwrap();
        (lo, hi)
    }

    /// Operator over the contiguous span `lo..=hi`, given the dimensions of
    /// every wire in that span. `None` for measurement.
    pub fn span_unitary(&self, span_dims: &[usize]) -> Result<Option<Unitary>> {
        let (lo, hi) = self.span();
        if span_dims.len() != hi - lo + 1 {
            return Err(Error::Internal(format!(
                "span {lo}..={hi} given {} dimensions",
                span_dims.len()
            )));
        }
        for (w, d) in self.wires.iter().zip(&self.dims) {
            if span_dims[w - lo] != *d {
                return Err(Error::Parameter(format!(
                    "gate expects dimension {d} on wire {w}, register has {}",
                    span_dims[w - lo]
                )));
            }
        }
        let d = self.dims[0];
        let u = match &self.kind {
            GateKind::NotX { shift } => x_gate(d, *shift)?,
            GateKind::PhaseZ => z_gate(d)?,
            GateKind::HadamardF => h_gate(d)?,
            GateKind::Identity => identity_gate(d)?,
            GateKind::ControlledX { shift } | GateKind::MultiControlledX { shift } => {
                let (target, controls) = self.wires.split_last().unwrap();
                let controls: Vec<usize> = controls.iter().map(|w| w - lo).collect();
                embed_controlled(span_dims, &controls, target - lo, *shift)?
            }
            GateKind::Custom(u) => u.clone(),
            GateKind::Measurement => return Ok(None),
        };
        Ok(Some(u))
    }
}
