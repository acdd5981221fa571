//! Mixed-radix basis indexing over a register of wires with dimensions
//! `d₀, d₁, …`. Wire 0 is the most significant digit and is printed leftmost.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::linalg::checked_product;

/// `∏ dᵢ`.
pub fn state_dimension(qregs: &[usize]) -> Result<usize> {
    checked_product(qregs)
}

/// Index of the basis state whose wire `i` holds `levels[i]`.
pub fn basis_index(qregs: &[usize], levels: &[usize]) -> Result<usize> {
    if qregs.len() != levels.len() {
        return Err(Error::Parameter(alloc::format!(
            "{} levels for {} wires",
            levels.len(),
            qregs.len()
        )));
    }
    let mut index = 0usize;
    for (wire, (&d, &x)) in qregs.iter().zip(levels).enumerate() {
        if x >= d {
            return Err(Error::Parameter(alloc::format!(
                "level {x} out of range for wire {wire} of dimension {d}"
            )));
        }
        index = index
            .checked_mul(d)
            .and_then(|i| i.checked_add(x))
            .ok_or(Error::Overflow { what: "basis index" })?;
    }
    Ok(index)
}

/// Per-wire levels of a basis index.
pub fn basis_levels(qregs: &[usize], index: usize) -> Result<Vec<usize>> {
    let dim = state_dimension(qregs)?;
    if index >= dim {
        return Err(Error::IndexOutOfRange { index, len: dim });
    }
    let mut levels = vec![0; qregs.len()];
    let mut rest = index;
    for (slot, &d) in levels.iter_mut().zip(qregs).rev() {
        *slot = rest % d;
        rest /= d;
    }
    Ok(levels)
}

/// `|x₀x₁…>` with digits concatenated, or dot separated once any wire has
/// more than ten levels.
pub fn ket_label(index: usize, qregs: &[usize]) -> Result<String> {
    let levels = basis_levels(qregs, index)?;
    let wide = qregs.iter().any(|&d| d > 10);
    let mut out = String::from("|");
    for (i, x) in levels.iter().enumerate() {
        if wide && i > 0 {
            out.push('.');
        }
        let _ = write!(out, "{x}");
    }
    out.push('>');
    Ok(out)
}
