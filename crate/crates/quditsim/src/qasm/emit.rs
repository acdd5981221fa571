use std::fmt::Write;

use super::QasmProgram;

/// Canonical text of a program: no comments, single spaces, one construct
/// per line, shifts only where the source gave one.
pub fn emit(program: &QasmProgram) -> String {
    let mut out = String::new();
    writeln!(out, ".qudit {}", program.declared_count).unwrap();
    for d in &program.declarations {
        writeln!(out, "qudit {} ({})", d.name, d.dim).unwrap();
    }
    out.push_str(".begin\n");
    for s in &program.statements {
        out.push_str(s.mnemonic.name());
        for op in &s.operands {
            out.push(' ');
            out.push_str(op);
        }
        if let Some(shift) = s.shift {
            write!(out, " {shift}").unwrap();
        }
        out.push('\n');
    }
    out.push_str(".end\n");
    out
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::super::{parse_source, Declaration, GateStmt, Mnemonic};
    use super::*;

    #[test]
    fn sample_round_trips() {
        let src = include_str!("../../data/sample.qasm");
        let p = parse_source(src).unwrap();
        let text = emit(&p);
        assert_eq!(parse_source(&text).unwrap(), p);
        assert!(text.contains("CX x1 x2 2\n"));
        assert!(text.starts_with(".qudit 3\nqudit x0 (2)\n"));
    }

    fn arb_program() -> impl Strategy<Value = QasmProgram> {
        prop::collection::vec(2usize..=6, 3..=5)
            .prop_flat_map(|dims| {
                let n = dims.len();
                let stmt = (
                    0usize..5,
                    prop::sample::subsequence((0..n).collect::<Vec<_>>(), 3),
                    any::<bool>(),
                    any::<u32>(),
                );
                (Just(dims), prop::collection::vec(stmt, 0..12))
            })
            .prop_map(|(dims, raw)| {
                let declarations: Vec<Declaration> = dims
                    .iter()
                    .enumerate()
                    .map(|(i, &dim)| Declaration {
                        name: format!("q{i}"),
                        dim,
                        line: 0,
                    })
                    .collect();
                let statements = raw
                    .into_iter()
                    .map(|(m, mut wires, explicit, seed)| {
                        let mnemonic = [Mnemonic::X, Mnemonic::H, Mnemonic::Z, Mnemonic::CX, Mnemonic::TOF][m];
                        // rotate so the subsequence order is not always ascending
                        let len = wires.len();
                        wires.rotate_left(seed as usize % len);
                        wires.truncate(mnemonic.arity());
                        let target_dim = dims[*wires.last().unwrap()];
                        let shift = (explicit && mnemonic.takes_shift()).then(|| 1 + seed as usize % (target_dim - 1));
                        GateStmt {
                            mnemonic,
                            operands: wires.iter().map(|w| format!("q{w}")).collect(),
                            shift,
                            line: 0,
                        }
                    })
                    .collect();
                QasmProgram {
                    declared_count: dims.len(),
                    declarations,
                    statements,
                }
            })
    }

    proptest! {
        #[test]
        fn emit_then_parse_is_identity(p in arb_program()) {
            let text = emit(&p);
            prop_assert_eq!(parse_source(&text).unwrap(), p.clone());
            // emitting is a fixed point after one round
            prop_assert_eq!(emit(&parse_source(&text).unwrap()), text);
        }
    }
}
