//! The line-oriented qudit assembly dialect.
//!
//! ```text
//! .qudit 2
//! qudit a (2)
//! qudit b (3)
//! .begin
//! H a
//! CX a b 2
//! .end
//! ```
//!
//! Gate lines are `MNEMONIC op [op [op]] [shift]` with mnemonics `X`, `H`,
//! `Z`, `CX` and `TOF`. A missing shift means `+1`. Measurement of every
//! wire is implied by `.end`.

mod build;
mod emit;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

pub use build::build_circuit;
pub use emit::emit;
pub use lexer::{tokenize, Directive, Keyword, Token, TokenKind};
pub use parser::parse;

use quditsim_core::{Backend, QuantumCircuit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mnemonic {
    X,
    H,
    Z,
    CX,
    TOF,
}

impl Mnemonic {
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "X" => Mnemonic::X,
            "H" => Mnemonic::H,
            "Z" => Mnemonic::Z,
            "CX" => Mnemonic::CX,
            "TOF" => Mnemonic::TOF,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Mnemonic::X => "X",
            Mnemonic::H => "H",
            Mnemonic::Z => "Z",
            Mnemonic::CX => "CX",
            Mnemonic::TOF => "TOF",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Mnemonic::X | Mnemonic::H | Mnemonic::Z => 1,
            Mnemonic::CX => 2,
            Mnemonic::TOF => 3,
        }
    }

    /// Whether the gate takes a shift argument.
    pub fn takes_shift(self) -> bool {
        matches!(self, Mnemonic::X | Mnemonic::CX | Mnemonic::TOF)
    }
}

impl fmt::Display for Mnemonic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `qudit <name> (<dim>)`.
#[derive(Debug, Clone, Eq)]
pub struct Declaration {
    pub name: String,
    pub dim: usize,
    pub line: usize,
}

/// One gate line. The shifted wire is the last operand.
#[derive(Debug, Clone, Eq)]
pub struct GateStmt {
    pub mnemonic: Mnemonic,
    pub operands: Vec<String>,
    pub shift: Option<usize>,
    pub line: usize,
}

impl GateStmt {
    pub fn effective_shift(&self) -> usize {
        self.shift.unwrap_or(1)
    }
}

// Line numbers record where a construct came from; they are not part of
// the program's structure.
impl PartialEq for Declaration {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.dim == other.dim
    }
}

impl PartialEq for GateStmt {
    fn eq(&self, other: &Self) -> bool {
        self.mnemonic == other.mnemonic && self.operands == other.operands && self.shift == other.shift
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QasmProgram {
    pub declared_count: usize,
    pub declarations: Vec<Declaration>,
    pub statements: Vec<GateStmt>,
}

impl QasmProgram {
    pub fn dims(&self) -> Vec<usize> {
        self.declarations.iter().map(|d| d.dim).collect()
    }

    pub fn wire_of(&self, name: &str) -> Option<usize> {
        self.declarations.iter().position(|d| d.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QasmErrorKind {
    #[error("illegal character {0:?}")]
    IllegalCharacter(char),
    #[error("unknown directive .{0}")]
    UnknownDirective(String),
    #[error("integer literal {0} is too large")]
    IntegerOverflow(String),
    #[error("expected {expected}, found {found}")]
    Expected { expected: &'static str, found: String },
    #[error("missing .qudit header")]
    MissingHeader,
    #[error("header declares {declared} qudits but {found} are declared")]
    CountMismatch { declared: usize, found: usize },
    #[error("qudit {0:?} is declared twice")]
    Duplicate(String),
    #[error("qudit {name:?} has dimension {dim}, at least 2 is required")]
    BadDimension { name: String, dim: usize },
    #[error("undeclared qudit {0:?}")]
    Undeclared(String),
    #[error("unknown gate {0:?}")]
    UnknownGate(String),
    #[error("{mnemonic} takes {expected} operand(s), found {found}")]
    Arity {
        mnemonic: Mnemonic,
        expected: usize,
        found: usize,
    },
    #[error("{0} takes no shift")]
    UnexpectedShift(Mnemonic),
    #[error("shift {shift} out of range for {name:?} of dimension {dim} (1 <= shift <= {max})", max = dim - 1)]
    ShiftRange { name: String, shift: usize, dim: usize },
    #[error("{0} operands must be distinct")]
    RepeatedOperand(Mnemonic),
    #[error("missing .begin")]
    MissingBegin,
    #[error("missing .end")]
    MissingEnd,
    #[error("content after .end")]
    TrailingContent,
    #[error(transparent)]
    Circuit(#[from] quditsim_core::Error),
}

/// A dialect error with the 1-based line (and column, when known) it refers to.
#[derive(Debug, Clone, PartialEq, Error)]
pub struct QasmError {
    pub line: usize,
    pub column: Option<usize>,
    #[source]
    pub kind: QasmErrorKind,
}

impl QasmError {
    pub(crate) fn at(line: usize, kind: QasmErrorKind) -> Self {
        Self {
            line,
            column: None,
            kind,
        }
    }
}

impl fmt::Display for QasmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.column {
            Some(col) => write!(f, "line {}, column {}: {}", self.line, col, self.kind),
            None => write!(f, "line {}: {}", self.line, self.kind),
        }
    }
}

/// Tokenizes and parses `source`.
pub fn parse_source(source: &str) -> Result<QasmProgram, QasmError> {
    parse(&tokenize(source)?)
}

/// Parses `source` and builds the circuit on `backend`.
pub fn load(source: &str, backend: impl Into<Backend>) -> Result<QuantumCircuit, QasmError> {
    build_circuit(&parse_source(source)?, backend)
}
