//! Brute-force reference simulator used by the integration and acceptance
//! tests. It shares nothing with the library beyond the complex number type:
//! every gate is applied straight from its basis-state rule on a dense
//! amplitude array.

#![allow(dead_code)]

use std::f64::consts::PI;

use quditsim_core::{Backend, Complex as C, QuantumCircuit};
use rand::Rng;

/// A gate described by its textbook action.
#[derive(Debug, Clone, PartialEq)]
pub enum OGate {
    X {
        wire: usize,
        shift: usize,
    },
    Z {
        wire: usize,
    },
    H {
        wire: usize,
    },
    Cx {
        control: usize,
        target: usize,
        shift: usize,
    },
    Mct {
        controls: Vec<usize>,
        target: usize,
        shift: usize,
    },
}

pub fn omega(k: usize, d: usize) -> C {
    let theta = 2.0 * PI * (k % d) as f64 / d as f64;
    C::new(theta.cos(), theta.sin())
}

/// Digits of `index`, wire 0 most significant.
pub fn digits(dims: &[usize], mut index: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for w in (0..dims.len()).rev() {
        out[w] = index % dims[w];
        index /= dims[w];
    }
    out
}

pub fn index_of(dims: &[usize], levels: &[usize]) -> usize {
    levels.iter().zip(dims).fold(0, |acc, (&l, &d)| acc * d + l)
}

pub fn total_dim(dims: &[usize]) -> usize {
    dims.iter().product()
}

/// Classical increment rule for (multi-)controlled increments.
pub fn increment_rule(dims: &[usize], levels: &[usize], controls: &[usize], target: usize, shift: usize) -> Vec<usize> {
    let mut out = levels.to_vec();
    if controls.iter().all(|&c| levels[c] == dims[c] - 1) {
        out[target] = (levels[target] + shift) % dims[target];
    }
    out
}

/// Applies one gate to a dense state by enumerating basis states.
pub fn apply(dims: &[usize], state: &[C], gate: &OGate) -> Vec<C> {
    let n = total_dim(dims);
    assert_eq!(state.len(), n);
    let mut out = vec![C::new(0.0, 0.0); n];
    for (k, &amp) in state.iter().enumerate() {
        if amp == C::new(0.0, 0.0) {
            continue;
        }
        let levels = digits(dims, k);
        match gate {
            OGate::X { wire, shift } => {
                let mut l = levels.clone();
                l[*wire] = (l[*wire] + shift) % dims[*wire];
                out[index_of(dims, &l)] += amp;
            }
            OGate::Z { wire } => {
                out[k] += amp * omega(levels[*wire], dims[*wire]);
            }
            OGate::H { wire } => {
                let d = dims[*wire];
                let norm = 1.0 / (d as f64).sqrt();
                for j in 0..d {
                    let mut l = levels.clone();
                    l[*wire] = j;
                    out[index_of(dims, &l)] += amp * omega(j * levels[*wire], d) * norm;
                }
            }
            OGate::Cx { control, target, shift } => {
                let l = increment_rule(dims, &levels, &[*control], *target, *shift);
                out[index_of(dims, &l)] += amp;
            }
            OGate::Mct {
                controls,
                target,
                shift,
            } => {
                let l = increment_rule(dims, &levels, controls, *target, *shift);
                out[index_of(dims, &l)] += amp;
            }
        }
    }
    out
}

pub fn basis(dims: &[usize], levels: &[usize]) -> Vec<C> {
    let mut v = vec![C::new(0.0, 0.0); total_dim(dims)];
    v[index_of(dims, levels)] = C::new(1.0, 0.0);
    v
}

pub fn simulate(dims: &[usize], init: &[usize], gates: &[OGate]) -> Vec<C> {
    gates.iter().fold(basis(dims, init), |s, g| apply(dims, &s, g))
}

/// Full operator of a gate sequence, column `k` = image of basis state `k`.
/// Returned row-major.
pub fn operator(dims: &[usize], gates: &[OGate]) -> Vec<Vec<C>> {
    let n = total_dim(dims);
    let mut m = vec![vec![C::new(0.0, 0.0); n]; n];
    for k in 0..n {
        let col = simulate(dims, &digits(dims, k), gates);
        for (row, v) in m.iter_mut().zip(col) {
            row[k] = v;
        }
    }
    m
}

pub fn max_diff(a: &[C], b: &[C]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// A random circuit over at most `max_wires` wires with dims in
/// `2..=max_dim`, made of up to `max_gates` gates.
#[derive(Debug, Clone)]
pub struct RandomCircuit {
    pub dims: Vec<usize>,
    pub init: Vec<usize>,
    pub gates: Vec<OGate>,
}

pub fn random_circuit<R: Rng>(rng: &mut R, max_wires: usize, max_dim: usize, max_gates: usize) -> RandomCircuit {
    let width = rng.gen_range(1..=max_wires);
    let dims: Vec<usize> = (0..width).map(|_| rng.gen_range(2..=max_dim)).collect();
    let init: Vec<usize> = dims.iter().map(|&d| rng.gen_range(0..d)).collect();
    let count = rng.gen_range(0..=max_gates);
    let mut gates = Vec::with_capacity(count);
    for _ in 0..count {
        let wire = rng.gen_range(0..width);
        let choice = if width == 1 {
            rng.gen_range(0..3)
        } else {
            rng.gen_range(0..5)
        };
        let gate = match choice {
            0 => OGate::X {
                wire,
                shift: rng.gen_range(1..dims[wire]),
            },
            1 => OGate::Z { wire },
            2 => OGate::H { wire },
            3 => {
                let mut target = rng.gen_range(0..width);
                while target == wire {
                    target = rng.gen_range(0..width);
                }
                OGate::Cx {
                    control: wire,
                    target,
                    shift: rng.gen_range(1..dims[target]),
                }
            }
            _ => {
                let target = rng.gen_range(0..width);
                let mut controls: Vec<usize> = (0..width).filter(|&w| w != target && rng.gen_bool(0.6)).collect();
                if controls.is_empty() {
                    controls.push((target + 1) % width);
                }
                OGate::Mct {
                    controls,
                    target,
                    shift: rng.gen_range(1..dims[target]),
                }
            }
        };
        gates.push(gate);
    }
    RandomCircuit { dims, init, gates }
}

impl RandomCircuit {
    /// The same gate list pushed into a library circuit.
    pub fn build(&self, backend: Backend, compaction: bool) -> QuantumCircuit {
        let mut qc = QuantumCircuit::with_init_states(self.dims.clone(), self.init.clone())
            .unwrap()
            .with_backend(backend)
            .with_compaction(compaction);
        for g in &self.gates {
            match g {
                OGate::X { wire, shift } => qc.x(*wire, *shift),
                OGate::Z { wire } => qc.z(*wire),
                OGate::H { wire } => qc.h(*wire),
                OGate::Cx { control, target, shift } => qc.cx((*control, *target), *shift),
                OGate::Mct {
                    controls,
                    target,
                    shift,
                } => qc.mct(controls, *target, *shift),
            }
            .unwrap();
        }
        qc
    }
}
