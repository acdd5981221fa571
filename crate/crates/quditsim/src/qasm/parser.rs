use std::collections::HashSet;

use super::lexer::{Directive, Keyword, Token, TokenKind};
use super::{Declaration, GateStmt, Mnemonic, QasmError, QasmErrorKind, QasmProgram};

fn describe(kind: &TokenKind) -> String {
    match kind {
        TokenKind::Directive(Directive::Qudit) => ".qudit".into(),
        TokenKind::Directive(Directive::Begin) => ".begin".into(),
        TokenKind::Directive(Directive::End) => ".end".into(),
        TokenKind::Keyword(Keyword::Qudit) => "qudit".into(),
        TokenKind::Ident(name) => format!("identifier {name:?}"),
        TokenKind::Int(n) => format!("integer {n}"),
        TokenKind::LParen => "'('".into(),
        TokenKind::RParen => "')'".into(),
    }
}

/// Cursor over the tokens of a single source line.
struct Line<'a> {
    tokens: &'a [Token],
    pos: usize,
    number: usize,
}

impl<'a> Line<'a> {
    fn peek(&self) -> Option<&'a TokenKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn error(&self, expected: &'static str) -> QasmError {
        match self.tokens.get(self.pos) {
            Some(t) => QasmError {
                line: t.line,
                column: Some(t.column),
                kind: QasmErrorKind::Expected {
                    expected,
                    found: describe(&t.kind),
                },
            },
            None => QasmError::at(
                self.number,
                QasmErrorKind::Expected {
                    expected,
                    found: "end of line".into(),
                },
            ),
        }
    }

    fn expect(&mut self, want: TokenKind, expected: &'static str) -> Result<(), QasmError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn int(&mut self, expected: &'static str) -> Result<usize, QasmError> {
        match self.peek() {
            Some(TokenKind::Int(n)) => {
                self.pos += 1;
                Ok(*n)
            }
            _ => Err(self.error(expected)),
        }
    }

    fn ident(&mut self, expected: &'static str) -> Result<String, QasmError> {
        match self.peek() {
            Some(TokenKind::Ident(name)) => {
                self.pos += 1;
                Ok(name.clone())
            }
            _ => Err(self.error(expected)),
        }
    }

    fn finish(&self) -> Result<(), QasmError> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            Err(self.error("end of line"))
        }
    }
}

fn lines(tokens: &[Token]) -> Vec<Line<'_>> {
    tokens
        .chunk_by(|a, b| a.line == b.line)
        .map(|chunk| Line {
            tokens: chunk,
            pos: 0,
            number: chunk[0].line,
        })
        .collect()
}

/// Parses a token stream into a program, checking every rule that can be
/// decided without building the circuit.
pub fn parse(tokens: &[Token]) -> Result<QasmProgram, QasmError> {
    let mut lines = lines(tokens).into_iter().peekable();
    let last_line = tokens.last().map_or(1, |t| t.line);

    let mut header = lines
        .next()
        .ok_or_else(|| QasmError::at(1, QasmErrorKind::MissingHeader))?;
    if header.peek() != Some(&TokenKind::Directive(Directive::Qudit)) {
        return Err(QasmError {
            column: Some(header.tokens[0].column),
            ..QasmError::at(header.number, QasmErrorKind::MissingHeader)
        });
    }
    header.pos += 1;
    let declared_count = header.int("qudit count")?;
    header.finish()?;

    let mut declarations: Vec<Declaration> = Vec::new();
    let mut names = HashSet::new();
    loop {
        let Some(line) = lines.peek_mut() else {
            return Err(QasmError::at(last_line + 1, QasmErrorKind::MissingBegin));
        };
        match line.peek() {
            Some(TokenKind::Keyword(Keyword::Qudit)) => {
                line.pos += 1;
                let name = line.ident("qudit name")?;
                line.expect(TokenKind::LParen, "'('")?;
                let dim = line.int("dimension")?;
                line.expect(TokenKind::RParen, "')'")?;
                line.finish()?;
                let number = line.number;
                if dim < 2 {
                    return Err(QasmError::at(number, QasmErrorKind::BadDimension { name, dim }));
                }
                if !names.insert(name.clone()) {
                    return Err(QasmError::at(number, QasmErrorKind::Duplicate(name)));
                }
                declarations.push(Declaration {
                    name,
                    dim,
                    line: number,
                });
                lines.next();
            }
            Some(TokenKind::Directive(Directive::Begin)) => {
                line.pos += 1;
                line.finish()?;
                if declarations.len() != declared_count {
                    return Err(QasmError::at(
                        header.number,
                        QasmErrorKind::CountMismatch {
                            declared: declared_count,
                            found: declarations.len(),
                        },
                    ));
                }
                lines.next();
                break;
            }
            Some(TokenKind::Ident(_)) => return Err(QasmError::at(line.number, QasmErrorKind::MissingBegin)),
            _ => return Err(line.error("qudit declaration or .begin")),
        }
    }

    let program = QasmProgram {
        declared_count,
        declarations,
        statements: Vec::new(),
    };
    let mut statements = Vec::new();
    loop {
        let Some(mut line) = lines.next() else {
            return Err(QasmError::at(last_line + 1, QasmErrorKind::MissingEnd));
        };
        match line.peek() {
            Some(TokenKind::Directive(Directive::End)) => {
                line.pos += 1;
                line.finish()?;
                if let Some(extra) = lines.next() {
                    return Err(QasmError::at(extra.number, QasmErrorKind::TrailingContent));
                }
                break;
            }
            Some(TokenKind::Ident(_)) => statements.push(gate_line(&mut line, &program)?),
            _ => return Err(line.error("gate or .end")),
        }
    }
    Ok(QasmProgram { statements, ..program })
}

fn gate_line(line: &mut Line<'_>, program: &QasmProgram) -> Result<GateStmt, QasmError> {
    let number = line.number;
    let name = line.ident("gate mnemonic")?;
    let mnemonic = Mnemonic::from_name(&name).ok_or_else(|| QasmError::at(number, QasmErrorKind::UnknownGate(name)))?;

    let mut operands = Vec::new();
    while let Some(TokenKind::Ident(op)) = line.peek() {
        operands.push(op.clone());
        line.pos += 1;
    }
    let shift = match line.peek() {
        Some(TokenKind::Int(n)) => {
            line.pos += 1;
            Some(*n)
        }
        _ => None,
    };
    line.finish()?;

    if operands.len() != mnemonic.arity() {
        return Err(QasmError::at(
            number,
            QasmErrorKind::Arity {
                mnemonic,
                expected: mnemonic.arity(),
                found: operands.len(),
            },
        ));
    }
    let mut dims = Vec::with_capacity(operands.len());
    for op in &operands {
        let wire = program
            .wire_of(op)
            .ok_or_else(|| QasmError::at(number, QasmErrorKind::Undeclared(op.clone())))?;
        dims.push(program.declarations[wire].dim);
    }
    let distinct: HashSet<&String> = operands.iter().collect();
    if distinct.len() != operands.len() {
        return Err(QasmError::at(number, QasmErrorKind::RepeatedOperand(mnemonic)));
    }
    if let Some(shift) = shift {
        if !mnemonic.takes_shift() {
            return Err(QasmError::at(number, QasmErrorKind::UnexpectedShift(mnemonic)));
        }
        let dim = *dims.last().expect("arity is at least one");
        if shift == 0 || shift >= dim {
            return Err(QasmError::at(
                number,
                QasmErrorKind::ShiftRange {
                    name: operands.last().cloned().unwrap_or_default(),
                    shift,
                    dim,
                },
            ));
        }
    }
    Ok(GateStmt {
        mnemonic,
        operands,
        shift,
        line: number,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{parse_source, QasmErrorKind};
    use super::*;

    pub(crate) const SAMPLE: &str = include_str!("../../data/sample.qasm");

    fn err(src: &str) -> QasmError {
        parse_source(src).unwrap_err()
    }

    #[test]
    fn bundled_sample() {
        let p = parse_source(SAMPLE).unwrap();
        assert_eq!(p.declared_count, 3);
        assert_eq!(p.dims(), vec![2, 3, 3]);
        assert_eq!(p.statements.len(), 7);
        let shifts: Vec<usize> = p.statements.iter().map(GateStmt::effective_shift).collect();
        assert_eq!(shifts, vec![1, 1, 1, 1, 2, 1, 2]);
    }

    #[test]
    fn header_mismatch() {
        let e = err(".qudit 2\nqudit a (2)\nqudit b (2)\nqudit c (2)\n.begin\n.end\n");
        assert_eq!(e.line, 1);
        assert_eq!(e.kind, QasmErrorKind::CountMismatch { declared: 2, found: 3 });
    }

    #[test]
    fn shift_out_of_range() {
        let e = err(".qudit 2\nqudit x0 (2)\nqudit x1 (3)\n.begin\nCX x0 x1 5\n.end\n");
        assert_eq!(e.line, 5);
        assert!(matches!(e.kind, QasmErrorKind::ShiftRange { shift: 5, dim: 3, .. }));
        let e = err(".qudit 1\nqudit a (3)\n.begin\nX a 0\n.end\n");
        assert!(matches!(e.kind, QasmErrorKind::ShiftRange { shift: 0, .. }));
    }

    #[test]
    fn operand_typos_are_rejected() {
        let typo_case = SAMPLE.replace("X x2 2", "X X2 2");
        let e = err(&typo_case);
        assert_eq!(e.kind, QasmErrorKind::Undeclared("X2".into()));
        let typo_pair = SAMPLE.replace("CX x1 x2 2", "CX x1 x1 2");
        assert_eq!(err(&typo_pair).kind, QasmErrorKind::RepeatedOperand(Mnemonic::CX));
    }

    #[test]
    fn structural_errors_carry_lines() {
        let e = err(".qudit 1\nqudit a (2)\nX a\n.end\n");
        assert_eq!((e.line, e.kind), (3, QasmErrorKind::MissingBegin));
        let e = err(".qudit 1\nqudit a (2)\n.begin\nX a\n");
        assert_eq!((e.line, e.kind), (5, QasmErrorKind::MissingEnd));
        let e = err(".qudit 1\nqudit a (2)\n");
        assert_eq!(e.kind, QasmErrorKind::MissingBegin);
        let e = err("qudit a (2)\n");
        assert_eq!(e.kind, QasmErrorKind::MissingHeader);
        assert_eq!(err("").kind, QasmErrorKind::MissingHeader);
        let e = err(".qudit 1\nqudit a (2)\n.begin\n.end\nX a\n");
        assert_eq!((e.line, e.kind), (5, QasmErrorKind::TrailingContent));
    }

    #[test]
    fn statement_errors() {
        let base = ".qudit 2\nqudit a (2)\nqudit b (3)\n.begin\n";
        let case = |body: &str| err(&format!("{base}{body}\n.end\n"));
        assert!(matches!(
            case("CX a").kind,
            QasmErrorKind::Arity {
                expected: 2,
                found: 1,
                ..
            }
        ));
        assert_eq!(case("H a 1").kind, QasmErrorKind::UnexpectedShift(Mnemonic::H));
        assert_eq!(case("Y a").kind, QasmErrorKind::UnknownGate("Y".into()));
        assert_eq!(case("x a").kind, QasmErrorKind::UnknownGate("x".into()));
        assert_eq!(case("X A").kind, QasmErrorKind::Undeclared("A".into()));
        assert!(matches!(case("X a (1)").kind, QasmErrorKind::Expected { .. }));
        let e = err(".qudit 1\nqudit a (1)\n.begin\n.end\n");
        assert!(matches!(e.kind, QasmErrorKind::BadDimension { dim: 1, .. }));
        let e = err(".qudit 2\nqudit a (2)\nqudit a (3)\n.begin\n.end\n");
        assert_eq!((e.line, e.kind), (3, QasmErrorKind::Duplicate("a".into())));
    }

    #[test]
    fn comments_and_blank_lines_keep_numbering() {
        let src = "# header comment\n\n.qudit 1\nqudit a (2)   # qubit\n.begin\n\nH a\nX b\n.end\n";
        let e = err(src);
        assert_eq!((e.line, e.kind), (8, QasmErrorKind::Undeclared("b".into())));
    }
}
