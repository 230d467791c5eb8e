//! Canonical concrete syntax for every syntactic category.
//!
//! Binder names are taken from the recorded hints, renamed with a numeric
//! suffix when they would clash with a free name or an enclosing binder of
//! the same namespace, so the output always parses back to the same term.

use std::collections::HashSet;
use std::fmt;

use crate::erasure::PureTerm;
use crate::syntax::{AnnTerm, Hint, KindExpr, Namespace, Syntax, TLamBinder, TypeExpr, Var};

use super::lexer::is_keyword;

// Precedence contexts.
const TOP: u8 = 0;
const HEAD: u8 = 1;
const ATOM: u8 = 2;

struct Printer {
    free: HashSet<String>,
    terms: Vec<String>,
    types: Vec<String>,
    out: String,
}

impl Printer {
    fn new<'a>(free: impl IntoIterator<Item = &'a str>) -> Printer {
        Printer {
            free: free.into_iter().map(str::to_string).collect(),
            terms: Vec::new(),
            types: Vec::new(),
            out: String::new(),
        }
    }

    fn scope(&mut self, ns: Namespace) -> &mut Vec<String> {
        match ns {
            Namespace::Term => &mut self.terms,
            Namespace::Type => &mut self.types,
        }
    }

    fn pick(&mut self, ns: Namespace, hint: &Hint) -> String {
        let h = hint.as_str();
        let base = if !h.is_empty() && h != "_" && Namespace::of_spelling(h) == ns && !is_keyword(h) {
            h
        } else {
            match ns {
                Namespace::Term => "x",
                Namespace::Type => "X",
            }
        };
        let taken = |p: &mut Printer, s: &str| p.free.contains(s) || p.scope(ns).iter().any(|b| b == s);
        let mut name = base.to_string();
        let mut k = 1;
        while taken(self, &name) {
            name = format!("{base}{k}");
            k += 1;
        }
        name
    }

    fn bind(&mut self, ns: Namespace, hint: &Hint) -> String {
        let name = self.pick(ns, hint);
        self.scope(ns).push(name.clone());
        name
    }

    fn unbind(&mut self, ns: Namespace) {
        self.scope(ns).pop();
    }

    fn var(&mut self, ns: Namespace, v: &Var) {
        match v {
            Var::Free(n) => self.out.push_str(n.spelling()),
            Var::Bound(i) => {
                let scope = self.scope(ns);
                let s = match scope.len().checked_sub(i + 1) {
                    Some(pos) => scope[pos].clone(),
                    None => format!("^{i}"),
                };
                self.out.push_str(&s);
            }
        }
    }

    fn open(&mut self, needed: bool) {
        if needed {
            self.out.push('(');
        }
    }

    fn close(&mut self, needed: bool) {
        if needed {
            self.out.push(')');
        }
    }

    fn term(&mut self, t: &AnnTerm, prec: u8) {
        use AnnTerm::*;
        match t {
            Var(v) => self.var(Namespace::Term, v),
            Lam(h, b) => self.term_binder("λ", Namespace::Term, h, b, prec),
            TLam(TLamBinder::Term(h), b) => self.term_binder("Λ", Namespace::Term, h, b, prec),
            TLam(TLamBinder::Type(h), b) => self.term_binder("Λ", Namespace::Type, h, b, prec),
            App(f, a) => self.app(prec, f, |p| p.term(a, ATOM), ""),
            ErasedApp(f, a) => self.app(prec, f, |p| p.term(a, ATOM), "-"),
            TypeApp(f, s) => self.app(prec, f, |p| p.ty(s, ATOM), "· "),
            Pair(a, b) => {
                self.out.push('[');
                self.term(a, TOP);
                self.out.push_str(", ");
                self.term(b, TOP);
                self.out.push(']');
            }
            Proj1(a) | Proj2(a) => {
                self.term(a, ATOM);
                self.out.push_str(if matches!(t, Proj1(_)) { ".1" } else { ".2" });
            }
            Beta(a) => {
                self.out.push_str("β{");
                self.term(a, TOP);
                self.out.push('}');
            }
            Delta(a) => {
                self.open(prec > HEAD);
                self.out.push_str("δ ");
                self.term(a, ATOM);
                self.close(prec > HEAD);
            }
            Rho(q, b) => {
                self.open(prec > HEAD);
                self.out.push_str("ρ ");
                self.term(q, ATOM);
                self.out.push_str(" - ");
                self.term(b, ATOM);
                self.close(prec > HEAD);
            }
            Chi(s, b) => {
                self.open(prec > HEAD);
                self.out.push_str("χ ");
                self.ty(s, ATOM);
                self.out.push_str(" - ");
                self.term(b, ATOM);
                self.close(prec > HEAD);
            }
            Phi(q, a, b) => {
                self.open(prec > HEAD);
                self.out.push_str("φ ");
                self.term(q, ATOM);
                self.out.push_str(" - ");
                self.term(a, ATOM);
                self.out.push_str(" {");
                self.term(b, TOP);
                self.out.push('}');
                self.close(prec > HEAD);
            }
        }
    }

    fn term_binder(&mut self, sym: &str, ns: Namespace, h: &Hint, body: &AnnTerm, prec: u8) {
        self.open(prec > TOP);
        let x = self.bind(ns, h);
        self.out.push_str(&format!("{sym} {x} . "));
        self.term(body, TOP);
        self.unbind(ns);
        self.close(prec > TOP);
    }

    // `f` in head position followed by one argument printed by `arg`.
    fn app(&mut self, prec: u8, f: &AnnTerm, arg: impl FnOnce(&mut Printer), sep: &str) {
        self.open(prec > HEAD);
        self.term(f, HEAD);
        self.out.push(' ');
        self.out.push_str(sep);
        arg(self);
        self.close(prec > HEAD);
    }

    fn ty(&mut self, t: &TypeExpr, prec: u8) {
        use TypeExpr::*;
        match t {
            Var(v) => self.var(Namespace::Type, v),
            AllType(h, k, b) => self.type_binder("∀", Namespace::Type, h, |p| p.kind(k, HEAD), b, prec),
            LamType(h, k, b) => self.type_binder("λ", Namespace::Type, h, |p| p.kind(k, HEAD), b, prec),
            AllTerm(h, d, b) => self.type_binder("∀", Namespace::Term, h, |p| p.ty(d, HEAD), b, prec),
            Pi(h, d, b) => self.type_binder("Π", Namespace::Term, h, |p| p.ty(d, HEAD), b, prec),
            Iota(h, d, b) => self.type_binder("ι", Namespace::Term, h, |p| p.ty(d, HEAD), b, prec),
            LamTerm(h, d, b) => self.type_binder("λ", Namespace::Term, h, |p| p.ty(d, HEAD), b, prec),
            AppTerm(f, a) => {
                self.open(prec > HEAD);
                self.ty(f, HEAD);
                self.out.push(' ');
                self.term(a, ATOM);
                self.close(prec > HEAD);
            }
            AppType(f, a) => {
                self.open(prec > HEAD);
                self.ty(f, HEAD);
                self.out.push_str(" · ");
                self.ty(a, ATOM);
                self.close(prec > HEAD);
            }
            Eq(l, r) => {
                self.out.push_str("{ ");
                self.term(l, TOP);
                self.out.push_str(" ≃ ");
                self.term(r, TOP);
                self.out.push_str(" }");
            }
        }
    }

    fn type_binder(
        &mut self,
        sym: &str,
        ns: Namespace,
        h: &Hint,
        dom: impl FnOnce(&mut Printer),
        body: &TypeExpr,
        prec: u8,
    ) {
        self.open(prec > TOP);
        let x = self.pick(ns, h);
        self.out.push_str(&format!("{sym} {x} : "));
        dom(self);
        self.out.push_str(" . ");
        self.scope(ns).push(x);
        self.ty(body, TOP);
        self.unbind(ns);
        self.close(prec > TOP);
    }

    fn kind(&mut self, k: &KindExpr, prec: u8) {
        match k {
            KindExpr::Star => self.out.push('★'),
            KindExpr::PiTerm(h, d, b) => {
                self.open(prec > TOP);
                let x = self.pick(Namespace::Term, h);
                self.out.push_str(&format!("Π {x} : "));
                self.ty(d, HEAD);
                self.out.push_str(" . ");
                self.terms.push(x);
                self.kind(b, TOP);
                self.terms.pop();
                self.close(prec > TOP);
            }
            KindExpr::PiType(h, d, b) => {
                self.open(prec > TOP);
                let x = self.pick(Namespace::Type, h);
                self.out.push_str(&format!("Π {x} : "));
                self.kind(d, HEAD);
                self.out.push_str(" . ");
                self.types.push(x);
                self.kind(b, TOP);
                self.types.pop();
                self.close(prec > TOP);
            }
        }
    }

    fn pure(&mut self, p: &PureTerm, prec: u8) {
        match p {
            PureTerm::Var(v) => self.var(Namespace::Term, v),
            PureTerm::Lam(h, b) => {
                self.open(prec > TOP);
                let x = self.bind(Namespace::Term, h);
                self.out.push_str(&format!("λ {x} . "));
                self.pure(b, TOP);
                self.unbind(Namespace::Term);
                self.close(prec > TOP);
            }
            PureTerm::App(f, a) => {
                self.open(prec > HEAD);
                self.pure(f, HEAD);
                self.out.push(' ');
                self.pure(a, ATOM);
                self.close(prec > HEAD);
            }
        }
    }
}

fn spellings<S: Syntax>(e: &S) -> Vec<String> {
    e.fv().into_iter().map(|n| n.spelling().to_string()).collect()
}

impl fmt::Display for AnnTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free = spellings(self);
        let mut p = Printer::new(free.iter().map(String::as_str));
        p.term(self, TOP);
        f.write_str(&p.out)
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free = spellings(self);
        let mut p = Printer::new(free.iter().map(String::as_str));
        p.ty(self, TOP);
        f.write_str(&p.out)
    }
}

impl fmt::Display for KindExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free = spellings(self);
        let mut p = Printer::new(free.iter().map(String::as_str));
        p.kind(self, TOP);
        f.write_str(&p.out)
    }
}

impl fmt::Display for PureTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.fv().into_iter().map(|n| n.spelling().to_string()).collect();
        let mut p = Printer::new(free.iter().map(String::as_str));
        p.pure(self, TOP);
        f.write_str(&p.out)
    }
}
