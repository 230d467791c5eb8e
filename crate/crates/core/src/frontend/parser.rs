use crate::diagnostic::{Code, Diagnostic, SourceSpan};
use crate::syntax::{AnnTerm, KindExpr, Name, Namespace, TypeExpr};

use super::lexer::{Tok, Token};
use super::{Decl, DeclKind, Definition};

type PResult<T> = Result<T, Diagnostic>;

pub(super) struct Parser {
    toks: Vec<Token>,
    pos: usize,
    // Binder spellings in scope, innermost last.
    scope: Vec<String>,
    // Identifiers that were not bound by an enclosing binder.
    free: Vec<(Name, SourceSpan)>,
}

fn join(a: &SourceSpan, b: &SourceSpan) -> SourceSpan {
    SourceSpan {
        file: a.file.clone(),
        start: a.start,
        end: b.end,
        line: a.line,
        col: a.col,
        end_line: b.end_line,
        end_col: b.end_col,
    }
}

impl Parser {
    pub(super) fn new(toks: Vec<Token>) -> Parser {
        Parser {
            toks,
            pos: 0,
            scope: Vec::new(),
            free: Vec::new(),
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> &SourceSpan {
        &self.toks[self.pos].span
    }

    fn prev_span(&self) -> &SourceSpan {
        &self.toks[self.pos.saturating_sub(1)].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> Diagnostic {
        Diagnostic::new(Code::ParseError, msg).with_span(self.span().clone())
    }

    fn expected(&self, what: &str) -> Diagnostic {
        self.error(format!("expected {what}, found {}", self.peek().describe()))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> PResult<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.expected(what))
        }
    }

    pub(super) fn trailing(&self) -> Diagnostic {
        self.expected("end of input")
    }

    pub(super) fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    fn ident(&mut self) -> PResult<(String, SourceSpan)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let sp = self.bump().span;
                Ok((s, sp))
            }
            _ => Err(self.expected("an identifier")),
        }
    }

    fn ident_in(&mut self, ns: Namespace) -> PResult<(String, SourceSpan)> {
        let (s, sp) = self.ident()?;
        if Namespace::of_spelling(&s) != ns {
            let which = match ns {
                Namespace::Term => "a term variable (lowercase)",
                Namespace::Type => "a type variable (uppercase)",
            };
            return Err(
                Diagnostic::new(Code::ParseError, format!("expected {which}, found `{s}`")).with_span(sp),
            );
        }
        Ok((s, sp))
    }

    fn occurrence(&mut self, s: String, sp: SourceSpan) -> Name {
        let ns = Namespace::of_spelling(&s);
        let name = Name::new(ns, &s);
        if !self.scope.contains(&s) {
            self.free.push((name.clone(), sp));
        }
        name
    }

    fn under<T>(&mut self, x: &str, f: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        self.scope.push(x.to_string());
        let r = f(self);
        self.scope.pop();
        r
    }

    // ---- declarations ----

    pub(super) fn decl(&mut self) -> PResult<Decl> {
        self.free.clear();
        let start = self.span().clone();
        let kind = match self.peek() {
            Tok::Def => {
                self.bump();
                let (s, _) = self.ident()?;
                let name = Name::new(Namespace::of_spelling(&s), &s);
                self.expect(Tok::Colon, "`:`")?;
                let def = match name.namespace() {
                    Namespace::Term => {
                        let ty = self.ty()?;
                        self.expect(Tok::Equals, "`=`")?;
                        Definition::Term {
                            ty,
                            body: self.term()?,
                        }
                    }
                    Namespace::Type => {
                        let kind = self.kind()?;
                        self.expect(Tok::Equals, "`=`")?;
                        Definition::Type {
                            kind,
                            body: self.ty()?,
                        }
                    }
                };
                DeclKind::Define(name, def)
            }
            Tok::Check | Tok::Fail => {
                let fail = self.bump().tok == Tok::Fail;
                let t = self.term()?;
                self.expect(Tok::Colon, "`:`")?;
                let ty = self.ty()?;
                if fail {
                    DeclKind::Fail(t, ty)
                } else {
                    DeclKind::Check(t, ty)
                }
            }
            Tok::Conv => {
                self.bump();
                let a = self.ty()?;
                self.expect(Tok::Cong, "`≅`")?;
                DeclKind::Conv(a, self.ty()?)
            }
            Tok::Norm => {
                self.bump();
                DeclKind::Norm(self.term()?)
            }
            Tok::Synth => {
                self.bump();
                DeclKind::Synth(self.term()?)
            }
            _ => return Err(self.expected("a declaration")),
        };
        self.expect(Tok::Dot, "`.` ending the declaration")?;
        Ok(Decl {
            kind,
            span: join(&start, self.prev_span()),
            free: std::mem::take(&mut self.free),
        })
    }

    // ---- terms ----

    pub(super) fn term(&mut self) -> PResult<AnnTerm> {
        match self.peek() {
            Tok::Lambda => {
                self.bump();
                let (x, _) = self.ident_in(Namespace::Term)?;
                self.expect(Tok::Dot, "`.`")?;
                let body = self.under(&x, |p| p.term())?;
                Ok(AnnTerm::lam(&Name::term(&x), body))
            }
            Tok::BigLambda => {
                self.bump();
                let (x, _) = self.ident()?;
                self.expect(Tok::Dot, "`.`")?;
                let body = self.under(&x, |p| p.term())?;
                Ok(AnnTerm::tlam(&Name::new(Namespace::of_spelling(&x), &x), body))
            }
            _ => self.app(),
        }
    }

    fn starts_aterm(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => Namespace::of_spelling(s) == Namespace::Term,
            Tok::LParen | Tok::LBrack | Tok::Beta => true,
            _ => false,
        }
    }

    fn app(&mut self) -> PResult<AnnTerm> {
        let mut t = self.head()?;
        loop {
            if self.starts_aterm() {
                t = AnnTerm::app(t, self.aterm()?);
            } else if self.eat(&Tok::Minus) {
                t = AnnTerm::erased_app(t, self.aterm()?);
            } else if self.eat(&Tok::Cdot) {
                t = AnnTerm::type_app(t, self.atype()?);
            } else {
                return Ok(t);
            }
        }
    }

    fn head(&mut self) -> PResult<AnnTerm> {
        match self.peek() {
            Tok::Delta => {
                self.bump();
                Ok(AnnTerm::delta(self.aterm()?))
            }
            Tok::Rho => {
                self.bump();
                let q = self.aterm()?;
                self.expect(Tok::Minus, "`-`")?;
                Ok(AnnTerm::rho(q, self.aterm()?))
            }
            Tok::Chi => {
                self.bump();
                let s = self.atype()?;
                self.expect(Tok::Minus, "`-`")?;
                Ok(AnnTerm::chi(s, self.aterm()?))
            }
            Tok::Phi => {
                self.bump();
                let q = self.aterm()?;
                self.expect(Tok::Minus, "`-`")?;
                let a = self.aterm()?;
                self.expect(Tok::LBrace, "`{`")?;
                let b = self.term()?;
                self.expect(Tok::RBrace, "`}`")?;
                Ok(AnnTerm::phi(q, a, b))
            }
            _ => self.aterm(),
        }
    }

    fn aterm(&mut self) -> PResult<AnnTerm> {
        let mut t = match self.peek().clone() {
            Tok::Ident(_) => {
                let (s, sp) = self.ident_in(Namespace::Term)?;
                AnnTerm::free(self.occurrence(s, sp))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                t
            }
            Tok::LBrack => {
                self.bump();
                let a = self.term()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.term()?;
                self.expect(Tok::RBrack, "`]`")?;
                AnnTerm::pair(a, b)
            }
            Tok::Beta => {
                self.bump();
                self.expect(Tok::LBrace, "`{` after β")?;
                let t = self.term()?;
                self.expect(Tok::RBrace, "`}`")?;
                AnnTerm::beta(t)
            }
            _ => return Err(self.expected("a term")),
        };
        loop {
            if self.eat(&Tok::Proj1) {
                t = AnnTerm::proj1(t);
            } else if self.eat(&Tok::Proj2) {
                t = AnnTerm::proj2(t);
            } else {
                return Ok(t);
            }
        }
    }

    // ---- types ----

    pub(super) fn ty(&mut self) -> PResult<TypeExpr> {
        let former = self.peek().clone();
        match former {
            Tok::Forall | Tok::Lambda => {
                self.bump();
                let (x, _) = self.ident()?;
                self.expect(Tok::Colon, "`:`")?;
                let name = Name::new(Namespace::of_spelling(&x), &x);
                match name.namespace() {
                    Namespace::Type => {
                        let k = self.kind()?;
                        self.expect(Tok::Dot, "`.`")?;
                        let body = self.under(&x, |p| p.ty())?;
                        Ok(if former == Tok::Forall {
                            TypeExpr::all_type(&name, k, body)
                        } else {
                            TypeExpr::lam_type(&name, k, body)
                        })
                    }
                    Namespace::Term => {
                        let d = self.ty()?;
                        self.expect(Tok::Dot, "`.`")?;
                        let body = self.under(&x, |p| p.ty())?;
                        Ok(if former == Tok::Forall {
                            TypeExpr::all_term(&name, d, body)
                        } else {
                            TypeExpr::lam_term(&name, d, body)
                        })
                    }
                }
            }
            Tok::Pi | Tok::Iota => {
                self.bump();
                let (x, _) = self.ident_in(Namespace::Term)?;
                self.expect(Tok::Colon, "`:`")?;
                let d = self.ty()?;
                self.expect(Tok::Dot, "`.`")?;
                let body = self.under(&x, |p| p.ty())?;
                let name = Name::term(&x);
                Ok(if former == Tok::Pi {
                    TypeExpr::pi(&name, d, body)
                } else {
                    TypeExpr::iota(&name, d, body)
                })
            }
            _ => self.tapp(),
        }
    }

    fn tapp(&mut self) -> PResult<TypeExpr> {
        let mut t = self.atype()?;
        loop {
            if self.eat(&Tok::Cdot) {
                t = TypeExpr::app_type(t, self.atype()?);
            } else if self.starts_aterm() {
                t = TypeExpr::app_term(t, self.aterm()?);
            } else {
                return Ok(t);
            }
        }
    }

    fn atype(&mut self) -> PResult<TypeExpr> {
        match self.peek().clone() {
            Tok::Ident(_) => {
                let (s, sp) = self.ident_in(Namespace::Type)?;
                Ok(TypeExpr::free(self.occurrence(s, sp)))
            }
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::LBrace => {
                self.bump();
                let a = self.term()?;
                self.expect(Tok::Simeq, "`≃`")?;
                let b = self.term()?;
                self.expect(Tok::RBrace, "`}`")?;
                Ok(TypeExpr::eq(a, b))
            }
            _ => Err(self.expected("a type")),
        }
    }

    // ---- kinds ----

    pub(super) fn kind(&mut self) -> PResult<KindExpr> {
        match self.peek() {
            Tok::Star => {
                self.bump();
                Ok(KindExpr::Star)
            }
            Tok::Pi => {
                self.bump();
                let (x, _) = self.ident()?;
                self.expect(Tok::Colon, "`:`")?;
                let name = Name::new(Namespace::of_spelling(&x), &x);
                match name.namespace() {
                    Namespace::Term => {
                        let d = self.ty()?;
                        self.expect(Tok::Dot, "`.`")?;
                        let body = self.under(&x, |p| p.kind())?;
                        Ok(KindExpr::pi_term(&name, d, body))
                    }
                    Namespace::Type => {
                        let d = self.kind()?;
                        self.expect(Tok::Dot, "`.`")?;
                        let body = self.under(&x, |p| p.kind())?;
                        Ok(KindExpr::pi_type(&name, d, body))
                    }
                }
            }
            Tok::LParen => {
                self.bump();
                let k = self.kind()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(k)
            }
            _ => Err(self.expected("a kind")),
        }
    }
}
