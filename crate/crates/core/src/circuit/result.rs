use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Result;
use crate::linalg::{Complex, Vector};
use crate::register;

/// Entries whose magnitude does not exceed this are left out of reports.
pub const REPORT_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValueKind {
    #[default]
    Amplitude,
    Probability,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Amplitude(Complex),
    Probability(f64),
}

/// Wall-clock durations in seconds; filled in by drivers that have a clock.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Timings {
    pub load_secs: f64,
    pub exec_secs: f64,
}

/// Counters gathered while executing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExecutionStats {
    /// Gate moments that contributed an operator.
    pub moments_applied: usize,
    /// Largest number of stored entries in any flattened or accumulated
    /// operator. Zero for factored execution.
    pub peak_operator_entries: usize,
    /// Stored entries of the final state vector.
    pub state_entries: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultEntry {
    pub index: usize,
    pub label: String,
    pub value: Value,
}

/// Final state of a run plus its reporting view.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultSet {
    qregs: Vec<usize>,
    state: Vector,
    reported: Vec<(usize, Complex)>,
    total_probability: f64,
    value_kind: ValueKind,
    pub timings: Timings,
    pub stats: ExecutionStats,
}

impl ResultSet {
    pub(crate) fn new(qregs: Vec<usize>, state: Vector, stats: ExecutionStats) -> Self {
        let total_probability = state.norm_sqr();
        let reported = state
            .nonzeros()
            .into_iter()
            .filter(|(_, v)| v.norm() > REPORT_THRESHOLD)
            .collect();
        Self {
            qregs,
            state,
            reported,
            total_probability,
            value_kind: ValueKind::Amplitude,
            timings: Timings::default(),
            stats,
        }
    }

    pub fn with_value_kind(mut self, kind: ValueKind) -> Self {
        self.value_kind = kind;
        self
    }

    pub fn value_kind(&self) -> ValueKind {
        self.value_kind
    }

    pub fn qregs(&self) -> &[usize] {
        &self.qregs
    }

    /// Full final state, before report filtering.
    pub fn state(&self) -> &Vector {
        &self.state
    }

    /// `Σ |amplitude|²` over the full state.
    pub fn total_probability(&self) -> f64 {
        self.total_probability
    }

    /// Reported `(index, amplitude)` pairs in index order.
    pub fn amplitudes(&self) -> &[(usize, Complex)] {
        &self.reported
    }

    pub fn amplitude(&self, index: usize) -> Complex {
        self.state.get(index)
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.state.get(index).norm_sqr()
    }

    /// Reported entries rendered with ket labels and the selected value kind.
    pub fn entries(&self) -> Result<Vec<ResultEntry>> {
        self.reported
            .iter()
            .map(|&(index, amp)| {
                Ok(ResultEntry {
                    index,
                    label: register::ket_label(index, &self.qregs)?,
                    value: match self.value_kind {
                        ValueKind::Amplitude => Value::Amplitude(amp),
                        ValueKind::Probability => Value::Probability(amp.norm_sqr()),
                    },
                })
            })
            .collect()
    }
}
