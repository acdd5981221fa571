//! Ready-made qubit circuits for well known algorithms.

use alloc::format;
use alloc::vec;

use crate::circuit::QuantumCircuit;
use crate::error::{Error, Result};

/// Two-qubit Grover search marking `|11>`, one oracle + diffusion round.
///
/// The oracle is `CZ` and the diffusion `H⊗H · (Z⊗Z) · CZ · H⊗H`, with
/// `CZ = (I⊗H) · CX · (I⊗H)` and back-to-back Hadamards on wire 1 cancelled.
pub fn grover_n2() -> QuantumCircuit {
    let mut qc = QuantumCircuit::new([2, 2])
        .expect("static register")
        .with_name("grover_n2");
    let build = |qc: &mut QuantumCircuit| -> Result<()> {
        qc.h(0)?;
        // oracle
        qc.cx((0, 1), 1)?;
        // diffusion
        qc.h(0)?.z(0)?.z(1)?;
        qc.h(1)?.cx((0, 1), 1)?;
        qc.h(0)?;
        Ok(())
    };
    build(&mut qc).expect("static gate list");
    qc
}

/// Bernstein–Vazirani for a bit string `secret` over `n` data qubits plus one
/// ancilla prepared in `|1>`. Data qubit `i` carries `secret[i]`; the ancilla
/// ends in `|1>`.
pub fn bernstein_vazirani(secret: &str) -> Result<QuantumCircuit> {
    if secret.is_empty() {
        return Err(Error::Parameter("secret must not be empty".into()));
    }
    if let Some(bad) = secret.chars().find(|&c| c != '0' && c != '1') {
        return Err(Error::Parameter(format!("secret must be binary, found {bad:?}")));
    }
    let n = secret.len();
    let mut init = vec![0; n + 1];
    init[n] = 1;
    let mut qc = QuantumCircuit::with_init_states(vec![2; n + 1], init)?.with_name(format!("bv_{secret}"));
    for w in 0..=n {
        qc.h(w)?;
    }
    for (i, bit) in secret.bytes().enumerate() {
        if bit == b'1' {
            qc.cx((i, n), 1)?;
        }
    }
    for w in 0..=n {
        qc.h(w)?;
    }
    Ok(qc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::BackendKind;
    use crate::register;

    #[test]
    fn grover_finds_marked_state() {
        let qc = grover_n2();
        assert_eq!(qc.width(), 2);
        assert!(qc.depth() <= 9);
        let r = qc.clone().run().unwrap();
        assert!((r.probability(3) - 1.0).abs() < 1e-10);
        assert!((r.total_probability() - 1.0).abs() < 1e-9);
        let dense = qc.with_backend(BackendKind::Dense).run().unwrap();
        assert!(r.state().max_abs_diff(dense.state()).unwrap() < 1e-12);
    }

    #[test]
    fn bv_recovers_secret() {
        let r = bernstein_vazirani("101").unwrap().run().unwrap();
        let index = register::basis_index(&[2, 2, 2, 2], &[1, 0, 1, 1]).unwrap();
        assert!((r.probability(index) - 1.0).abs() < 1e-10);
        assert_eq!(r.entries().unwrap()[0].label, "|1011>");

        let r = bernstein_vazirani("0").unwrap().run().unwrap();
        assert!((r.probability(1) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn bv_rejects_bad_secrets() {
        assert!(bernstein_vazirani("").is_err());
        assert!(bernstein_vazirani("10a").is_err());
    }
}
