//! Execution strategy, backend and compaction must not change the result.

#[path = "support/oracle.rs"]
mod oracle;

use oracle::random_circuit;
use quditsim_core::linalg::Vector;
use quditsim_core::{templates, Backend, QuantumCircuit};
use rand::{rngs::StdRng, SeedableRng};

const TOL: f64 = 1e-12;

fn all_ways(build: impl Fn(Backend, bool) -> QuantumCircuit) -> Vec<Vector> {
    let mut out = Vec::new();
    for backend in [Backend::sparse(), Backend::dense()] {
        for compaction in [true, false] {
            out.push(build(backend, compaction).run().unwrap().state().clone());
            out.push(build(backend, compaction).execute_forward().unwrap().state().clone());
        }
    }
    out
}

fn assert_agree(states: &[Vector]) {
    for s in &states[1..] {
        let d = states[0].max_abs_diff(s).unwrap();
        assert!(d < TOL, "disagreement {d:e}");
    }
}

#[test]
fn random_corpus_is_invariant() {
    let mut rng = StdRng::seed_from_u64(50);
    for _ in 0..50 {
        let rc = random_circuit(&mut rng, 4, 4, 8);
        assert_agree(&all_ways(|b, c| rc.build(b, c)));
    }
}

#[test]
fn templates_are_invariant() {
    assert_agree(&all_ways(|b, c| {
        let qc = templates::grover_n2();
        rebuild(&qc, b, c)
    }));
    assert_agree(&all_ways(|b, c| {
        let qc = templates::bernstein_vazirani("1011").unwrap();
        rebuild(&qc, b, c)
    }));
}

/// Replays the gate list of `qc` with another backend and compaction setting.
fn rebuild(qc: &QuantumCircuit, backend: Backend, compaction: bool) -> QuantumCircuit {
    let mut out = QuantumCircuit::with_init_states(qc.qregs().to_vec(), qc.init_states().to_vec())
        .unwrap()
        .with_backend(backend)
        .with_compaction(compaction);
    for g in qc.flow().gates() {
        out.push_gate(g.spec().clone()).unwrap();
    }
    out
}

#[test]
fn states_stay_normalised() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..100 {
        let rc = random_circuit(&mut rng, 4, 5, 12);
        let r = rc.build(Backend::sparse(), true).run().unwrap();
        assert!((r.state().norm_sqr() - 1.0).abs() < 1e-10);
        assert!((r.total_probability() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn compaction_never_increases_depth() {
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..100 {
        let rc = random_circuit(&mut rng, 5, 3, 15);
        let packed = rc.build(Backend::sparse(), true);
        let loose = rc.build(Backend::sparse(), false);
        assert!(packed.depth() <= loose.depth());
        assert_eq!(loose.depth(), rc.gates.len());
    }
}
