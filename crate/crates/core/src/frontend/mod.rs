//! Concrete syntax: lexing, parsing, printing, and elaboration of
//! declaration files.

mod elaborate;
pub mod lexer;
mod parser;
mod printer;

pub use elaborate::{elaborate, DeclReport, Options, Report};

use crate::diagnostic::{Diagnostic, SourceSpan};
use crate::syntax::{AnnTerm, KindExpr, Name, TypeExpr};

use parser::Parser;

/// The right-hand side of a `def`.
#[derive(Clone, Debug, PartialEq)]
pub enum Definition {
    Term { ty: TypeExpr, body: AnnTerm },
    Type { kind: KindExpr, body: TypeExpr },
}

#[derive(Clone, Debug, PartialEq)]
pub enum DeclKind {
    Define(Name, Definition),
    Check(AnnTerm, TypeExpr),
    Fail(AnnTerm, TypeExpr),
    Conv(TypeExpr, TypeExpr),
    Norm(AnnTerm),
    Synth(AnnTerm),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decl {
    pub kind: DeclKind,
    pub span: SourceSpan,
    /// Occurrences of identifiers not bound inside the declaration.
    pub free: Vec<(Name, SourceSpan)>,
}

/// Parses a whole file; `file` only labels spans.
pub fn parse_file(file: &str, text: &str) -> Result<Vec<Decl>, Diagnostic> {
    let mut p = Parser::new(lexer::lex(file, text)?);
    let mut out = Vec::new();
    while !p.at_eof() {
        out.push(p.decl()?);
    }
    Ok(out)
}

fn parse_all<T>(text: &str, f: impl FnOnce(&mut Parser) -> Result<T, Diagnostic>) -> Result<T, Diagnostic> {
    let mut p = Parser::new(lexer::lex("<input>", text)?);
    let t = f(&mut p)?;
    if !p.at_eof() {
        return Err(p.trailing());
    }
    Ok(t)
}

pub fn parse_term(text: &str) -> Result<AnnTerm, Diagnostic> {
    parse_all(text, |p| p.term())
}

pub fn parse_type(text: &str) -> Result<TypeExpr, Diagnostic> {
    parse_all(text, |p| p.ty())
}

pub fn parse_kind(text: &str) -> Result<KindExpr, Diagnostic> {
    parse_all(text, |p| p.kind())
}
