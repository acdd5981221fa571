use super::{QasmError, QasmErrorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Directive {
    Qudit,
    Begin,
    End,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keyword {
    Qudit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Directive(Directive),
    Keyword(Keyword),
    Ident(String),
    Int(usize),
    LParen,
    RParen,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits `source` into tokens. Comments run from `#` to the end of the
/// line. Lines and columns are 1-based; columns count characters.
pub fn tokenize(source: &str) -> Result<Vec<Token>, QasmError> {
    let mut tokens = Vec::new();
    for (line_index, raw) in source.split('\n').enumerate() {
        let line = line_index + 1;
        let text = raw.strip_suffix('\r').unwrap_or(raw);
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let err = |kind| QasmError {
                line,
                column: Some(column),
                kind,
            };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            let kind = match c {
                '(' => {
                    i += 1;
                    TokenKind::LParen
                }
                ')' => {
                    i += 1;
                    TokenKind::RParen
                }
                '.' => {
                    i += 1;
                    while i < chars.len() && is_ident_continue(chars[i]) {
                        i += 1;
                    }
                    let word: String = chars[start + 1..i].iter().collect();
                    match word.as_str() {
                        "qudit" => TokenKind::Directive(Directive::Qudit),
                        "begin" => TokenKind::Directive(Directive::Begin),
                        "end" => TokenKind::Directive(Directive::End),
                        _ => return Err(err(QasmErrorKind::UnknownDirective(word))),
                    }
                }
                c if c.is_ascii_digit() => {
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let digits: String = chars[start..i].iter().collect();
                    match digits.parse() {
                        Ok(n) => TokenKind::Int(n),
                        Err(_) => return Err(err(QasmErrorKind::IntegerOverflow(digits))),
                    }
                }
                c if is_ident_start(c) => {
                    while i < chars.len() && is_ident_continue(chars[i]) {
                        i += 1;
                    }
                    let word: String = chars[start..i].iter().collect();
                    if word == "qudit" {
                        TokenKind::Keyword(Keyword::Qudit)
                    } else {
                        TokenKind::Ident(word)
                    }
                }
                other => return Err(err(QasmErrorKind::IllegalCharacter(other))),
            };
            tokens.push(Token { kind, line, column });
        }
    }
    Ok(tokens)
}
