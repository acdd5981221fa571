use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::backends::Kernels;
use crate::error::{Error, Result};
use crate::gates::{GateSpec, Unitary};
use crate::linalg::{checked_product, Matrix};

/// Handle to a gate stored in an [`OperatorFlow`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GateId(pub(crate) usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WireSlot {
    /// Initial basis level of the wire.
    Init(usize),
    /// Lowest wire of a gate span; carries the span operator.
    Anchor(GateId),
    /// Other wires of a gate span.
    Covered(GateId),
    Identity,
    Measure,
}

/// A gate together with the operator over its contiguous wire span.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacedGate {
    spec: GateSpec,
    lo: usize,
    hi: usize,
    unitary: Unitary,
}

impl PlacedGate {
    pub fn spec(&self) -> &GateSpec {
        &self.spec
    }

    pub fn span(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    pub fn unitary(&self) -> &Unitary {
        &self.unitary
    }
}

/// One time slice: a slot per wire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Moment {
    slots: Vec<WireSlot>,
}

impl Moment {
    fn filled(width: usize, slot: WireSlot) -> Self {
        Self {
            slots: vec![slot; width],
        }
    }

    pub fn slots(&self) -> &[WireSlot] {
        &self.slots
    }

    pub fn width(&self) -> usize {
        self.slots.len()
    }

    pub fn is_init(&self) -> bool {
        self.slots.iter().all(|s| matches!(s, WireSlot::Init(_)))
    }

    pub fn is_measurement(&self) -> bool {
        self.slots.iter().all(|s| matches!(s, WireSlot::Measure))
    }

    pub fn is_all_identity(&self) -> bool {
        self.slots.iter().all(|s| matches!(s, WireSlot::Identity))
    }

    /// Whether a gate holds the moment (not init, not measurement).
    pub fn is_gate_moment(&self) -> bool {
        !self.is_init() && !self.is_measurement()
    }

    fn is_free(&self, lo: usize, hi: usize) -> bool {
        self.slots[lo..=hi].iter().all(|s| matches!(s, WireSlot::Identity))
    }

    /// Gates anchored in this moment, in wire order.
    pub fn anchors(&self) -> impl Iterator<Item = GateId> + '_ {
        self.slots.iter().filter_map(|s| match s {
            WireSlot::Anchor(id) => Some(*id),
            _ => None,
        })
    }
}

/// The ordered list of moments making up a circuit program.
///
/// `moments[0]` holds the initial state. Once [`OperatorFlow::seal`] has
/// appended the measurement moment, further pushes are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorFlow {
    moments: Vec<Moment>,
    gates: Vec<PlacedGate>,
    sealed: bool,
}

impl OperatorFlow {
    pub(crate) fn new(init_states: &[usize]) -> Self {
        Self {
            moments: vec![Moment {
                slots: init_states.iter().map(|&l| WireSlot::Init(l)).collect(),
            }],
            gates: Vec::new(),
            sealed: false,
        }
    }

    pub fn moments(&self) -> &[Moment] {
        &self.moments
    }

    pub fn gate(&self, id: GateId) -> &PlacedGate {
        &self.gates[id.0]
    }

    pub fn gates(&self) -> &[PlacedGate] {
        &self.gates
    }

    pub fn is_sealed(&self) -> bool {
        self.sealed
    }

    pub fn width(&self) -> usize {
        self.moments[0].width()
    }

    /// Number of moments holding gates.
    pub fn depth(&self) -> usize {
        self.moments.iter().filter(|m| m.is_gate_moment()).count()
    }

    /// Indices of moments that contribute an operator, in execution order.
    pub fn active_moments(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.moments
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_gate_moment() && !m.is_all_identity())
            .map(|(i, _)| i)
    }

    /// Places a gate and returns the moment it landed in. With `compact`, the
    /// gate slides back over moments whose slots on its span are identities,
    /// stopping at the first gate or the init moment.
    pub(crate) fn push(&mut self, spec: GateSpec, unitary: Unitary, compact: bool) -> Result<Option<usize>> {
        if self.sealed {
            return Ok(None);
        }
        let (lo, hi) = spec.span();
        let width = self.width();
        if hi >= width {
            return Err(Error::WireOutOfRange { wire: hi, width });
        }
        let mut target = None;
        if compact {
            for j in (1..self.moments.len()).rev() {
                if self.moments[j].is_free(lo, hi) {
                    target = Some(j);
                } else {
                    break;
                }
            }
        }
        let index = match target {
            Some(j) => j,
            None => {
                self.moments.push(Moment::filled(width, WireSlot::Identity));
                self.moments.len() - 1
            }
        };
        if !self.moments[index].is_free(lo, hi) {
            return Err(Error::SpanCollision { lo, hi, moment: index });
        }
        let id = GateId(self.gates.len());
        self.gates.push(PlacedGate { spec, lo, hi, unitary });
        let slots = &mut self.moments[index].slots;
        slots[lo] = WireSlot::Anchor(id);
        for slot in &mut slots[lo + 1..=hi] {
            *slot = WireSlot::Covered(id);
        }
        Ok(Some(index))
    }

    #[cfg(test)]
    pub(crate) fn push_empty_moment(&mut self) {
        let width = self.width();
        self.moments.push(Moment::filled(width, WireSlot::Identity));
    }

    /// Appends the measurement moment. Idempotent.
    pub(crate) fn seal(&mut self) {
        if !self.sealed {
            let width = self.width();
            self.moments.push(Moment::filled(width, WireSlot::Measure));
            self.sealed = true;
        }
    }

    /// Kronecker flattening of one gate moment, wire 0 leftmost. Consecutive
    /// identity wires are merged into one identity block.
    pub fn moment_unitary(&self, index: usize, qregs: &[usize], kernels: &dyn Kernels) -> Result<Unitary> {
        let moment = self.moments.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.moments.len(),
        })?;
        if moment.width() != qregs.len() {
            return Err(Error::Internal(format!(
                "moment width {} differs from register width {}",
                moment.width(),
                qregs.len()
            )));
        }
        let mut acc: Option<Matrix> = None;
        let mut pending_identity = 1usize;
        let mut covered_until: Option<(GateId, usize)> = None;

        fn push_factor(acc: &mut Option<Matrix>, factor: Matrix, kernels: &dyn Kernels) -> Result<()> {
            *acc = Some(match acc.take() {
                None => kernels.adopt(&factor)?,
                Some(a) => kernels.kron(&a, &factor)?,
            });
            Ok(())
        }

        for (wire, slot) in moment.slots.iter().enumerate() {
            match *slot {
                WireSlot::Identity => {
                    pending_identity = checked_product(&[pending_identity, qregs[wire]])?;
                }
                WireSlot::Anchor(id) => {
                    if pending_identity > 1 {
                        push_factor(&mut acc, kernels.identity(pending_identity)?, kernels)?;
                        pending_identity = 1;
                    }
                    let gate = self.gate(id);
                    if gate.lo != wire {
                        return Err(Error::Internal(format!(
                            "anchor of gate {} misplaced at wire {wire}",
                            id.0
                        )));
                    }
                    push_factor(&mut acc, gate.unitary.matrix().clone(), kernels)?;
                    covered_until = Some((id, gate.hi));
                }
                WireSlot::Covered(id) => match covered_until {
                    Some((owner, hi)) if owner == id && wire <= hi => {}
                    _ => {
                        return Err(Error::Internal(format!(
                            "span marker of gate {} at wire {wire} without its anchor",
                            id.0
                        )))
                    }
                },
                WireSlot::Init(_) | WireSlot::Measure => {
                    return Err(Error::Internal(format!("moment {index} holds no gate operators")));
                }
            }
        }
        if pending_identity > 1 || acc.is_none() {
            push_factor(&mut acc, kernels.identity(pending_identity)?, kernels)?;
        }
        Ok(Unitary::from_trusted(acc.unwrap()))
    }

    /// Entries the flattened moment will store, computed from its factors.
    pub fn predicted_entries(&self, index: usize, qregs: &[usize], dense: bool) -> u128 {
        let moment = &self.moments[index];
        let mut stored: u128 = 1;
        for (wire, slot) in moment.slots.iter().enumerate() {
            let factor = match *slot {
                WireSlot::Identity if dense => (qregs[wire] as u128) * (qregs[wire] as u128),
                WireSlot::Identity => qregs[wire] as u128,
                WireSlot::Anchor(id) => {
                    let u = self.gate(id).unitary();
                    if dense {
                        (u.dim() as u128) * (u.dim() as u128)
                    } else {
                        u.matrix().to_sparse().nnz() as u128
                    }
                }
                _ => 1,
            };
            stored = stored.saturating_mul(factor);
        }
        stored
    }
}
