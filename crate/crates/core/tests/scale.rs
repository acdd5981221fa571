//! Larger registers on the sparse backend.

use std::time::{Duration, Instant};

use quditsim_core::{Backend, BackendKind, Error, QuantumCircuit};

fn layered_qubits(width: usize, depth: usize) -> QuantumCircuit {
    let mut qc = QuantumCircuit::new(vec![2; width]).unwrap();
    for layer in 0..depth {
        for w in 0..width {
            match (layer + w) % 3 {
                0 => qc.h(w).unwrap(),
                1 => qc.z(w).unwrap(),
                _ => qc.cx((w, (w + 1) % width), 1).unwrap(),
            };
        }
    }
    qc
}

#[test]
fn seven_qubits_depth_twenty_is_fast() {
    let mut qc = QuantumCircuit::new(vec![2; 7]).unwrap().with_compaction(false);
    for layer in 0..20 {
        let w = layer % 7;
        if layer % 2 == 0 {
            qc.h(w).unwrap();
        } else {
            qc.cx((w, (w + 3) % 7), 1).unwrap();
        }
    }
    assert_eq!(qc.depth(), 20);
    let start = Instant::now();
    let r = qc.run().unwrap();
    assert!(start.elapsed() < Duration::from_secs(5));
    assert!((r.total_probability() - 1.0).abs() < 1e-10);

    let mut dense = layered_qubits(7, 20).with_backend(BackendKind::Dense);
    let mut sparse = layered_qubits(7, 20);
    let a = dense.run().unwrap();
    let b = sparse.run().unwrap();
    assert!(a.state().max_abs_diff(b.state()).unwrap() < 1e-12);
}

fn twenty_qutrits() -> QuantumCircuit {
    let mut qc = QuantumCircuit::new(vec![3; 20]).unwrap();
    for w in 0..20 {
        qc.x(w, 1 + w % 2).unwrap();
    }
    for w in 0..19 {
        qc.cx((w, w + 1), 1).unwrap();
    }
    qc
}

#[test]
fn twenty_qutrit_register_stays_sparse() {
    let mut qc = twenty_qutrits();
    assert_eq!(qc.state_dimension(), 3usize.pow(20));
    let r = qc.execute_forward().unwrap();
    assert_eq!(r.state().len(), 3_486_784_401);
    assert_eq!(r.amplitudes().len(), 1);
    assert!((r.total_probability() - 1.0).abs() < 1e-12);

    let mut dense = twenty_qutrits().with_backend(Backend::dense());
    assert!(matches!(dense.execute_forward(), Err(Error::Capacity { .. })));
    assert!(matches!(dense.run(), Err(Error::Capacity { .. })));
}

// Nearest-neighbour gates only: a gate spanning the whole register would
// carry a 3^20-dimensional span operator.
#[test]
fn twenty_qutrits_depth_eighty() {
    let mut qc = QuantumCircuit::new(vec![3; 20]).unwrap();
    for w in [0, 7, 13] {
        qc.h(w).unwrap();
    }
    for layer in 0..80 {
        let w = layer % 19;
        if layer % 4 == 0 {
            qc.x(w, 1).unwrap();
        } else {
            qc.cx((w, w + 1), 1 + layer % 2).unwrap();
        }
    }
    let r = qc.execute_forward().unwrap();
    assert_eq!(r.amplitudes().len(), 27);
    assert!((r.total_probability() - 1.0).abs() < 1e-10);
}
