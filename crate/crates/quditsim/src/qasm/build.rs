use quditsim_core::{Backend, QuantumCircuit};

use super::{Mnemonic, QasmError, QasmErrorKind, QasmProgram};

/// Builds the circuit: declaration order gives wire order, every wire
/// starts in `|0>`, and measurement is appended after the last statement.
pub fn build_circuit(program: &QasmProgram, backend: impl Into<Backend>) -> Result<QuantumCircuit, QasmError> {
    let first_line = program.declarations.first().map_or(1, |d| d.line);
    let mut qc = QuantumCircuit::new(program.dims())
        .map_err(|e| QasmError::at(first_line, e.into()))?
        .with_backend(backend);
    for stmt in &program.statements {
        let wire = |i: usize| {
            program
                .wire_of(&stmt.operands[i])
                .ok_or_else(|| QasmError::at(stmt.line, QasmErrorKind::Undeclared(stmt.operands[i].clone())))
        };
        if stmt.operands.len() != stmt.mnemonic.arity() {
            return Err(QasmError::at(
                stmt.line,
                QasmErrorKind::Arity {
                    mnemonic: stmt.mnemonic,
                    expected: stmt.mnemonic.arity(),
                    found: stmt.operands.len(),
                },
            ));
        }
        let shift = stmt.effective_shift();
        let pushed = match stmt.mnemonic {
            Mnemonic::X => qc.x(wire(0)?, shift).map(drop),
            Mnemonic::H => qc.h(wire(0)?).map(drop),
            Mnemonic::Z => qc.z(wire(0)?).map(drop),
            Mnemonic::CX => qc.cx((wire(0)?, wire(1)?), shift).map(drop),
            Mnemonic::TOF => qc.toffoli((wire(0)?, wire(1)?, wire(2)?), shift).map(drop),
        };
        pushed.map_err(|e| QasmError::at(stmt.line, e.into()))?;
    }
    qc.measure_all();
    Ok(qc)
}

#[cfg(test)]
mod tests {
    use quditsim_core::{BackendKind, Error};

    use super::super::{load, parse_source};
    use super::*;

    #[test]
    fn sample_builds_with_declared_dims() {
        let qc = load(include_str!("../../data/sample.qasm"), BackendKind::Sparse).unwrap();
        assert_eq!(qc.width(), 3);
        assert_eq!(qc.qregs(), &[2, 3, 3]);
        assert!(qc.is_sealed());
        assert_eq!(qc.flow().gates().len(), 7);
    }

    #[test]
    fn empty_body_returns_init_ket() {
        let mut qc = load(
            ".qudit 2\nqudit a (2)\nqudit b (5)\n.begin\n.end\n",
            BackendKind::Sparse,
        )
        .unwrap();
        let r = qc.run().unwrap();
        assert_eq!(r.amplitudes().len(), 1);
        assert_eq!(r.amplitudes()[0].0, 0);
    }

    #[test]
    fn toffoli_on_binary_middle_reports_line() {
        let src = ".qudit 3\nqudit a (2)\nqudit b (2)\nqudit c (2)\n.begin\nH a\nTOF a b c\n.end\n";
        let e = load(src, BackendKind::Sparse).unwrap_err();
        assert_eq!(e.line, 7);
        assert_eq!(e.kind, QasmErrorKind::Circuit(Error::Decomposition { wire: 1, dim: 2 }));
    }

    #[test]
    fn toffoli_statement_expands() {
        let src = include_str!("../../data/bench/toffoli_2_tof.qasm");
        let program = parse_source(src).unwrap();
        let qc = build_circuit(&program, Backend::default()).unwrap();
        assert_eq!(qc.width(), 3);
        assert_eq!(qc.flow().gates().len(), 3);
    }

    #[test]
    fn identical_sources_give_identical_results() {
        let src = include_str!("../../data/sample.qasm");
        let a = load(src, BackendKind::Sparse).unwrap().run().unwrap();
        let b = load(src, BackendKind::Sparse).unwrap().run().unwrap();
        assert_eq!(a, b);
    }
}
