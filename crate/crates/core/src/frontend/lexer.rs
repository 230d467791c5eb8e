use std::sync::Arc;

use crate::diagnostic::{Code, Diagnostic, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Def,
    Lambda,
    BigLambda,
    Forall,
    Pi,
    Iota,
    Beta,
    Delta,
    Rho,
    Chi,
    Phi,
    Star,
    Colon,
    Dot,
    Proj1,
    Proj2,
    Minus,
    Cdot,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Equals,
    Simeq,
    Cong,
    Check,
    Fail,
    Conv,
    Norm,
    Synth,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::Ident(_) => "identifier",
            Tok::Def => "def",
            Tok::Lambda => "λ",
            Tok::BigLambda => "Λ",
            Tok::Forall => "∀",
            Tok::Pi => "Π",
            Tok::Iota => "ι",
            Tok::Beta => "β",
            Tok::Delta => "δ",
            Tok::Rho => "ρ",
            Tok::Chi => "χ",
            Tok::Phi => "φ",
            Tok::Star => "★",
            Tok::Colon => ":",
            Tok::Dot => ".",
            Tok::Proj1 => ".1",
            Tok::Proj2 => ".2",
            Tok::Minus => "-",
            Tok::Cdot => "·",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::Comma => ",",
            Tok::Equals => "=",
            Tok::Simeq => "≃",
            Tok::Cong => "≅",
            Tok::Check => "#check",
            Tok::Fail => "#fail",
            Tok::Conv => "#conv",
            Tok::Norm => "#norm",
            Tok::Synth => "#synth",
            Tok::Eof => "end of input",
        }
    }
}

fn keyword(word: &str) -> Option<Tok> {
    Some(match word {
        "def" => Tok::Def,
        "lam" => Tok::Lambda,
        "Lam" => Tok::BigLambda,
        "All" => Tok::Forall,
        "Pi" => Tok::Pi,
        "iota" => Tok::Iota,
        "beta" => Tok::Beta,
        "delta" => Tok::Delta,
        "rho" => Tok::Rho,
        "chi" => Tok::Chi,
        "phi" => Tok::Phi,
        _ => return None,
    })
}

/// Reserved words that cannot be identifiers.
pub fn is_keyword(word: &str) -> bool {
    keyword(word).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

struct Cursor<'a> {
    file: Arc<str>,
    text: &'a str,
    pos: usize,
    line: u32,
    col: u32,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.text[self.pos..].chars();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn span_from(&self, start: (usize, u32, u32)) -> SourceSpan {
        SourceSpan {
            file: self.file.clone(),
            start: start.0,
            end: self.pos,
            line: start.1,
            col: start.2,
            end_line: self.line,
            end_col: self.col,
        }
    }
}

/// Splits `text` into tokens, ending with [`Tok::Eof`].
pub fn lex(file: &str, text: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut cur = Cursor {
        file: file.into(),
        text,
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    loop {
        while let Some(c) = cur.peek() {
            if c.is_whitespace() {
                cur.bump();
            } else if c == '-' && cur.peek2() == Some('-') {
                while cur.peek().is_some_and(|c| c != '\n') {
                    cur.bump();
                }
            } else {
                break;
            }
        }
        let start = (cur.pos, cur.line, cur.col);
        let Some(c) = cur.bump() else {
            out.push(Token {
                tok: Tok::Eof,
                span: cur.span_from(start),
            });
            return Ok(out);
        };
        let tok = match c {
            'λ' => Tok::Lambda,
            'Λ' => Tok::BigLambda,
            '∀' => Tok::Forall,
            'Π' => Tok::Pi,
            'ι' => Tok::Iota,
            'β' => Tok::Beta,
            'δ' => Tok::Delta,
            'ρ' => Tok::Rho,
            'χ' => Tok::Chi,
            'φ' => Tok::Phi,
            '★' | '*' => Tok::Star,
            ':' => Tok::Colon,
            '.' => match cur.peek() {
                Some('1') => {
                    cur.bump();
                    Tok::Proj1
                }
                Some('2') => {
                    cur.bump();
                    Tok::Proj2
                }
                _ => Tok::Dot,
            },
            '-' => Tok::Minus,
            '·' | '@' => Tok::Cdot,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            ',' => Tok::Comma,
            '≃' => Tok::Simeq,
            '≅' => Tok::Cong,
            '=' if cur.peek() == Some('=') => {
                cur.bump();
                Tok::Simeq
            }
            '=' => Tok::Equals,
            '~' if cur.peek() == Some('=') => {
                cur.bump();
                Tok::Cong
            }
            '#' => {
                let mut word = String::new();
                while let Some(c) = cur.peek().filter(|c| c.is_ascii_alphabetic()) {
                    word.push(c);
                    cur.bump();
                }
                match word.as_str() {
                    "check" => Tok::Check,
                    "fail" => Tok::Fail,
                    "conv" => Tok::Conv,
                    "norm" => Tok::Norm,
                    "synth" => Tok::Synth,
                    _ => {
                        return Err(
                            Diagnostic::new(Code::ParseError, format!("unknown directive #{word}"))
                                .with_span(cur.span_from(start)),
                        )
                    }
                }
            }
            c if ident_start(c) => {
                let mut word = String::from(c);
                while let Some(c) = cur.peek().filter(|&c| ident_char(c)) {
                    word.push(c);
                    cur.bump();
                }
                keyword(&word).unwrap_or(Tok::Ident(word))
            }
            c => {
                return Err(
                    Diagnostic::new(Code::ParseError, format!("unexpected character `{c}`"))
                        .with_span(cur.span_from(start)),
                )
            }
        };
        out.push(Token {
            tok,
            span: cur.span_from(start),
        });
    }
}
