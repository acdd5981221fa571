use alloc::boxed::Box;
use alloc::string::String;

use crate::backends::BackendKind;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch in {op}: {lhs:?} vs {rhs:?}")]
    Shape {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },

    #[error("dimension overflow while computing {what}")]
    Overflow { what: &'static str },

    #[error("{kind} backend refused state dimension {state_dim}: needs {required} entries, budget is {available}")]
    Capacity {
        kind: BackendKind,
        state_dim: usize,
        required: u128,
        available: u128,
    },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("shift {shift} out of range for dimension {dim} (expected 1..={max})", max = dim - 1)]
    ShiftOutOfRange { shift: usize, dim: usize },

    #[error("wire {wire} out of range for a register of width {width}")]
    WireOutOfRange { wire: usize, width: usize },

    #[error("matrix is not unitary (max |U'U - I| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("toffoli decomposition needs at least 3 levels on the middle wire {wire} (it has {dim}); use mct instead")]
    Decomposition { wire: usize, dim: usize },

    #[error("gate on wires {lo}..={hi} collides with another slot in moment {moment}")]
    SpanCollision { lo: usize, hi: usize, moment: usize },

    #[error("moment {index}: {source}")]
    Moment {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn in_moment(self, index: usize) -> Self {
        Error::Moment {
            index,
            source: Box::new(self),
        }
    }
}
