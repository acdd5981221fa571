//! Circuit construction and execution.
//!
//! A [`QuantumCircuit`] owns an [`OperatorFlow`]: an init moment followed by
//! gate moments and, once sealed, a measurement moment. Gates are turned into
//! operators when pushed; nothing is multiplied until [`QuantumCircuit::run`].

mod flow;
mod result;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

pub use flow::{GateId, Moment, OperatorFlow, PlacedGate, WireSlot};
pub use result::{ExecutionStats, ResultEntry, ResultSet, Timings, Value, ValueKind, REPORT_THRESHOLD};

use crate::backends::{Backend, BackendKind};
use crate::error::{Error, Result};
use crate::gates::{GateKind, GateSpec, Unitary};
use crate::linalg::{checked_product, Matrix, Split, Vector};
use crate::register;

/// Progress notifications emitted while executing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceEvent {
    /// A moment was flattened into an operator with `entries` stored values.
    Flattened { moment: usize, entries: usize },
    /// The running product absorbed `moment`.
    Accumulated { moment: usize, entries: usize },
    /// The state vector was advanced past `moment`.
    Applied { moment: usize, state_entries: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumCircuit {
    qregs: Vec<usize>,
    init_states: Vec<usize>,
    name: Option<String>,
    backend: Backend,
    flow: OperatorFlow,
    compaction: bool,
}

impl QuantumCircuit {
    /// Register of the given wire dimensions, every wire starting in `|0>`,
    /// on the sparse backend.
    pub fn new(qregs: impl Into<Vec<usize>>) -> Result<Self> {
        let qregs = qregs.into();
        let init = alloc::vec![0; qregs.len()];
        Self::with_init_states(qregs, init)
    }

    pub fn with_init_states(qregs: impl Into<Vec<usize>>, init_states: impl Into<Vec<usize>>) -> Result<Self> {
        let (qregs, init_states) = (qregs.into(), init_states.into());
        if qregs.is_empty() {
            return Err(Error::Parameter("a circuit needs at least one wire".into()));
        }
        if let Some((wire, &d)) = qregs.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(Error::Parameter(format!(
                "wire {wire} has dimension {d}; at least 2 required"
            )));
        }
        if init_states.len() != qregs.len() {
            return Err(Error::Parameter(format!(
                "{} initial states for {} wires",
                init_states.len(),
                qregs.len()
            )));
        }
        register::basis_index(&qregs, &init_states)?;
        register::state_dimension(&qregs)?;
        let flow = OperatorFlow::new(&init_states);
        Ok(Self {
            qregs,
            init_states,
            name: None,
            backend: Backend::default(),
            flow,
            compaction: true,
        })
    }

    pub fn with_backend(mut self, backend: impl Into<Backend>) -> Self {
        self.backend = backend.into();
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Turns identity compaction on or off for subsequent pushes.
    pub fn with_compaction(mut self, enabled: bool) -> Self {
        self.compaction = enabled;
        self
    }

    pub fn set_backend(&mut self, backend: impl Into<Backend>) {
        self.backend = backend.into();
    }

    pub fn qregs(&self) -> &[usize] {
        &self.qregs
    }

    pub fn init_states(&self) -> &[usize] {
        &self.init_states
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn flow(&self) -> &OperatorFlow {
        &self.flow
    }

    pub fn width(&self) -> usize {
        self.qregs.len()
    }

    /// Gate moments after compaction.
    pub fn depth(&self) -> usize {
        self.flow.depth()
    }

    pub fn state_dimension(&self) -> usize {
        // validated at construction
        checked_product(&self.qregs).unwrap_or(usize::MAX)
    }

    pub fn is_sealed(&self) -> bool {
        self.flow.is_sealed()
    }

    fn dim_of(&self, wire: usize) -> Result<usize> {
        self.qregs.get(wire).copied().ok_or(Error::WireOutOfRange {
            wire,
            width: self.qregs.len(),
        })
    }

    fn spec(&self, kind: GateKind, wires: &[usize]) -> Result<GateSpec> {
        let dims = wires.iter().map(|&w| self.dim_of(w)).collect::<Result<Vec<_>>>()?;
        GateSpec::new(kind, wires.to_vec(), dims)
    }

    /// Pushes a gate. Ignored once the circuit is sealed.
    pub fn push_gate(&mut self, spec: GateSpec) -> Result<&mut Self> {
        if self.flow.is_sealed() {
            return Ok(self);
        }
        for (&w, &d) in spec.wires().iter().zip(spec.dims()) {
            if self.dim_of(w)? != d {
                return Err(Error::Parameter(format!(
                    "gate expects dimension {d} on wire {w}, register has {}",
                    self.qregs[w]
                )));
            }
        }
        match spec.kind() {
            GateKind::Identity => return Ok(self),
            GateKind::Measurement => {
                return Err(Error::Parameter("measurement is added with measure_all".into()));
            }
            _ => {}
        }
        let (lo, hi) = spec.span();
        let unitary = spec
            .span_unitary(&self.qregs[lo..=hi])?
            .ok_or_else(|| Error::Internal("gate without operator".into()))?;
        self.flow.push(spec, unitary, self.compaction)?;
        Ok(self)
    }

    pub fn h(&mut self, wire: usize) -> Result<&mut Self> {
        let spec = self.spec(GateKind::HadamardF, &[wire])?;
        self.push_gate(spec)
    }

    pub fn x(&mut self, wire: usize, plus: usize) -> Result<&mut Self> {
        let spec = self.spec(GateKind::NotX { shift: plus }, &[wire])?;
        self.push_gate(spec)
    }

    pub fn z(&mut self, wire: usize) -> Result<&mut Self> {
        let spec = self.spec(GateKind::PhaseZ, &[wire])?;
        self.push_gate(spec)
    }

    /// Controlled increment: `target += plus` when `control` is at its top level.
    pub fn cx(&mut self, (control, target): (usize, usize), plus: usize) -> Result<&mut Self> {
        let spec = self.spec(GateKind::ControlledX { shift: plus }, &[control, target])?;
        self.push_gate(spec)
    }

    pub fn mct(&mut self, controls: &[usize], target: usize, plus: usize) -> Result<&mut Self> {
        let mut wires = controls.to_vec();
        wires.push(target);
        let spec = self.spec(GateKind::MultiControlledX { shift: plus }, &wires)?;
        self.push_gate(spec)
    }

    /// User matrix on contiguous ascending wires, checked for unitarity.
    pub fn custom(&mut self, wires: &[usize], matrix: Matrix) -> Result<&mut Self> {
        let spec = self.spec(GateKind::Custom(Unitary::new(matrix)?), wires)?;
        self.push_gate(spec)
    }

    /// Toffoli through an intermediate level on the middle wire, as three
    /// controlled increments: raise `c2` into its top level when `c1` fires,
    /// let the raised `c2` drive the target, then lower `c2` back.
    ///
    /// The raise shift is `d₂ − 2` and the undo shift `2`, so `c2 ∈ {0, 1}`
    /// reaches the top level only from `1`. For qutrits this is `+1`, `+2`.
    pub fn toffoli(&mut self, (c1, c2, target): (usize, usize, usize), plus: usize) -> Result<&mut Self> {
        let d_mid = self.dim_of(c2)?;
        self.dim_of(c1)?;
        self.dim_of(target)?;
        if c1 == c2 || c2 == target || c1 == target {
            return Err(Error::Parameter(format!(
                "toffoli wires must be distinct, got ({c1}, {c2}, {target})"
            )));
        }
        if d_mid < 3 {
            return Err(Error::Decomposition { wire: c2, dim: d_mid });
        }
        // validate every step before touching the flow
        let steps = [
            self.spec(GateKind::ControlledX { shift: d_mid - 2 }, &[c1, c2])?,
            self.spec(GateKind::ControlledX { shift: plus }, &[c2, target])?,
            self.spec(GateKind::ControlledX { shift: 2 }, &[c1, c2])?,
        ];
        for spec in steps {
            self.push_gate(spec)?;
        }
        Ok(self)
    }

    /// Appends measurement on every wire and seals the circuit.
    pub fn measure_all(&mut self) -> &mut Self {
        self.flow.seal();
        self
    }

    fn initial_state(&self) -> Result<Vector> {
        let index = register::basis_index(&self.qregs, &self.init_states)?;
        self.backend.kernels().basis_vector(self.state_dimension(), index)
    }

    /// Flattened operator of gate moment `index` on this circuit's backend.
    pub fn moment_unitary(&self, index: usize) -> Result<Unitary> {
        if !self.flow.moments().get(index).is_some_and(|m| m.is_gate_moment()) {
            return Err(Error::Parameter(format!("moment {index} is not a gate moment")));
        }
        self.flow.moment_unitary(index, &self.qregs, self.backend.kernels())
    }

    /// Executes by reverse accumulation: the last gate moment is flattened,
    /// each predecessor is flattened and multiplied in, and one final
    /// matrix-vector product applies the total operator to the initial state.
    /// Seals the circuit if needed.
    pub fn run(&mut self) -> Result<ResultSet> {
        self.run_traced(&mut |_| {})
    }

    pub fn run_traced(&mut self, trace: &mut dyn FnMut(TraceEvent)) -> Result<ResultSet> {
        self.measure_all();
        let dim = self.state_dimension();
        self.backend.check(dim)?;
        let kernels = self.backend.kernels();
        let dense = self.backend.kind == BackendKind::Dense;
        let mut stats = ExecutionStats::default();
        let mut acc: Option<Matrix> = None;
        let mut last = 0;
        for index in self.flow.active_moments().rev() {
            let predicted = self.flow.predicted_entries(index, &self.qregs, dense);
            if predicted > self.backend.memory_budget as u128 {
                return Err(Error::Capacity {
                    kind: self.backend.kind,
                    state_dim: dim,
                    required: predicted,
                    available: self.backend.memory_budget as u128,
                }
                .in_moment(index));
            }
            let flat = self
                .flow
                .moment_unitary(index, &self.qregs, kernels)
                .map_err(|e| e.in_moment(index))?
                .into_matrix();
            trace(TraceEvent::Flattened {
                moment: index,
                entries: flat.stored(),
            });
            stats.peak_operator_entries = stats.peak_operator_entries.max(flat.stored());
            let next = match acc.take() {
                None => flat,
                Some(a) => kernels.matmul(&a, &flat).map_err(|e| e.in_moment(index))?,
            };
            trace(TraceEvent::Accumulated {
                moment: index,
                entries: next.stored(),
            });
            stats.peak_operator_entries = stats.peak_operator_entries.max(next.stored());
            stats.moments_applied += 1;
            acc = Some(next);
            last = index;
        }
        let psi0 = self.initial_state()?;
        let state = match acc {
            None => psi0,
            Some(op) => kernels.matvec(&op, &psi0).map_err(|e| e.in_moment(last))?,
        };
        trace(TraceEvent::Applied {
            moment: last,
            state_entries: state.nonzeros().len(),
        });
        Ok(self.finish(state, stats))
    }

    /// Executes front to back, applying every gate of each moment to the
    /// state vector in place of the flattened moment operator. Seals the
    /// circuit if needed.
    pub fn execute_forward(&mut self) -> Result<ResultSet> {
        self.execute_forward_traced(&mut |_| {})
    }

    pub fn execute_forward_traced(&mut self, trace: &mut dyn FnMut(TraceEvent)) -> Result<ResultSet> {
        self.measure_all();
        let dim = self.state_dimension();
        let kernels = self.backend.kernels();
        if self.backend.kind == BackendKind::Dense {
            // a dense state needs `dim` entries, not `dim²`
            if dim as u128 > self.backend.memory_budget as u128 {
                return Err(Error::Capacity {
                    kind: self.backend.kind,
                    state_dim: dim,
                    required: dim as u128,
                    available: self.backend.memory_budget as u128,
                });
            }
        } else {
            self.backend.check(dim)?;
        }
        let mut stats = ExecutionStats::default();
        let mut state = self.initial_state()?;
        let active: Vec<usize> = self.flow.active_moments().collect();
        for index in active {
            for id in self.flow.moments()[index].anchors() {
                let gate = self.flow.gate(id);
                let (lo, hi) = gate.span();
                let split = Split {
                    outer: checked_product(&self.qregs[..lo])?,
                    local: gate.unitary().dim(),
                    inner: checked_product(&self.qregs[hi + 1..])?,
                };
                state = kernels
                    .apply_local(gate.unitary().matrix(), split, &state)
                    .map_err(|e| e.in_moment(index))?;
            }
            stats.moments_applied += 1;
            trace(TraceEvent::Applied {
                moment: index,
                state_entries: state.nonzeros().len(),
            });
        }
        Ok(self.finish(state, stats))
    }

    fn finish(&self, state: Vector, mut stats: ExecutionStats) -> ResultSet {
        stats.state_entries = state.nonzeros().len();
        ResultSet::new(self.qregs.clone(), state, stats)
    }
}
