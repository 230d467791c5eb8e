//! Shared generators for the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use cdle_core::frontend::{parse_file, Decl, DeclKind, Definition};
use cdle_core::syntax::{Definiens, Hint, Syntax};
use cdle_core::{AnnTerm, KindExpr, Name, PureTerm, TypeExpr};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<_> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "ced"))
        .collect();
    files.sort();
    files
}

pub fn read_corpus(name: &str) -> (String, String) {
    let path = corpus_dir().join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    (path.display().to_string(), text)
}

pub fn parse_corpus(name: &str) -> Vec<Decl> {
    let (file, text) = read_corpus(name);
    parse_file(&file, &text).unwrap_or_else(|d| panic!("{d}"))
}

/// Declarations with every earlier definition inlined, as the elaborator does.
pub fn inlined(decls: &[Decl]) -> Vec<DeclKind> {
    let mut defs: HashMap<cdle_core::Name, Definiens> = HashMap::new();
    let mut out = Vec::new();
    for d in decls {
        let lookup = |n: &cdle_core::Name| defs.get(n).cloned();
        let kind = match &d.kind {
            DeclKind::Define(n, Definition::Term { ty, body }) => {
                let (ty, body) = (ty.inline(&lookup), body.inline(&lookup));
                let k = DeclKind::Define(
                    n.clone(),
                    Definition::Term {
                        ty: ty.clone(),
                        body: body.clone(),
                    },
                );
                defs.insert(n.clone(), Definiens::Term(AnnTerm::chi(ty, body)));
                k
            }
            DeclKind::Define(n, Definition::Type { kind, body }) => {
                let (kind, body) = (kind.inline(&lookup), body.inline(&lookup));
                let k = DeclKind::Define(
                    n.clone(),
                    Definition::Type {
                        kind,
                        body: body.clone(),
                    },
                );
                defs.insert(n.clone(), Definiens::Type(body));
                k
            }
            DeclKind::Check(t, ty) => DeclKind::Check(t.inline(&lookup), ty.inline(&lookup)),
            DeclKind::Fail(t, ty) => DeclKind::Fail(t.inline(&lookup), ty.inline(&lookup)),
            DeclKind::Conv(a, b) => DeclKind::Conv(a.inline(&lookup), b.inline(&lookup)),
            DeclKind::Norm(t) => DeclKind::Norm(t.inline(&lookup)),
            DeclKind::Synth(t) => DeclKind::Synth(t.inline(&lookup)),
        };
        out.push(kind);
    }
    out
}

/// All closed pure terms with at most `max` nodes.
pub fn closed_pure_terms(max: usize) -> Vec<PureTerm> {
    (1..=max).flat_map(|n| pure_terms_of_size(n, 0)).collect()
}

// Terms of exactly `n` nodes whose free indices are below `scope`.
fn pure_terms_of_size(n: usize, scope: usize) -> Vec<PureTerm> {
    let mut out = Vec::new();
    if n == 1 {
        out.extend((0..scope).map(PureTerm::bound));
        return out;
    }
    for b in pure_terms_of_size(n - 1, scope + 1) {
        out.push(PureTerm::Lam(Hint::new("x"), Box::new(b)));
    }
    for k in 1..n - 1 {
        let fs = pure_terms_of_size(k, scope);
        let args = pure_terms_of_size(n - 1 - k, scope);
        for f in &fs {
            for a in &args {
                out.push(PureTerm::app(f.clone(), a.clone()));
            }
        }
    }
    out
}

const TERM_NAMES: [&str; 4] = ["x", "y", "z", "x"];
const TYPE_NAMES: [&str; 3] = ["X", "Y", "X"];
const FREE_TERMS: [&str; 2] = ["a", "b"];
const FREE_TYPES: [&str; 2] = ["A", "B"];

/// Random expressions in named form. Binder names come from a small pool so
/// shadowing is common; a few free names also appear.
pub struct Gen<'r> {
    pub rng: &'r mut ChaCha8Rng,
    terms: Vec<Name>,
    types: Vec<Name>,
    /// Allow free names outside the binders.
    pub open: bool,
}

impl<'r> Gen<'r> {
    pub fn new(rng: &'r mut ChaCha8Rng) -> Gen<'r> {
        Gen {
            rng,
            terms: Vec::new(),
            types: Vec::new(),
            open: true,
        }
    }

    fn pick_term_var(&mut self) -> Option<Name> {
        let free = if self.open { FREE_TERMS.len() } else { 0 };
        let n = self.terms.len() + free;
        if n == 0 {
            return None;
        }
        let i = self.rng.gen_range(0..n);
        Some(match self.terms.get(i) {
            Some(x) => x.clone(),
            None => Name::term(FREE_TERMS[i - self.terms.len()]),
        })
    }

    fn pick_type_var(&mut self) -> Option<Name> {
        let free = if self.open { FREE_TYPES.len() } else { 0 };
        let n = self.types.len() + free;
        if n == 0 {
            return None;
        }
        let i = self.rng.gen_range(0..n);
        Some(match self.types.get(i) {
            Some(x) => x.clone(),
            None => Name::ty(FREE_TYPES[i - self.types.len()]),
        })
    }

    fn term_binder(&mut self) -> Name {
        Name::term(TERM_NAMES[self.rng.gen_range(0..TERM_NAMES.len())])
    }

    fn type_binder(&mut self) -> Name {
        Name::ty(TYPE_NAMES[self.rng.gen_range(0..TYPE_NAMES.len())])
    }

    fn under_term<T>(&mut self, x: &Name, f: impl FnOnce(&mut Self) -> T) -> T {
        self.terms.push(x.clone());
        let r = f(self);
        self.terms.pop();
        r
    }

    fn under_type<T>(&mut self, x: &Name, f: impl FnOnce(&mut Self) -> T) -> T {
        self.types.push(x.clone());
        let r = f(self);
        self.types.pop();
        r
    }

    pub fn pure(&mut self, size: usize) -> PureTerm {
        if size <= 1 {
            if let Some(x) = self.pick_term_var() {
                return PureTerm::free(x);
            }
        }
        if size <= 2 || self.rng.gen_bool(0.45) {
            let x = self.term_binder();
            let body = self.under_term(&x, |g| g.pure(size.max(2) - 1));
            PureTerm::lam(&x, body)
        } else {
            let k = self.rng.gen_range(1..size - 1);
            PureTerm::app(self.pure(k), self.pure(size - 1 - k))
        }
    }

    pub fn term(&mut self, size: usize) -> AnnTerm {
        let leaf = self.pick_term_var();
        if size <= 1 {
            if let Some(x) = leaf {
                return AnnTerm::free(x);
            }
        }
        let s = size.saturating_sub(1).max(1);
        let choice = if leaf.is_none() && size <= 1 {
            0
        } else {
            self.rng.gen_range(0..15)
        };
        match choice {
            0 | 1 => {
                let x = self.term_binder();
                let body = self.under_term(&x, |g| g.term(s));
                AnnTerm::lam(&x, body)
            }
            2 => {
                let x = if self.rng.gen_bool(0.5) {
                    self.term_binder()
                } else {
                    self.type_binder()
                };
                let body = if x.spelling().starts_with(char::is_uppercase) {
                    self.under_type(&x, |g| g.term(s))
                } else {
                    self.under_term(&x, |g| g.term(s))
                };
                AnnTerm::tlam(&x, body)
            }
            3 | 4 => AnnTerm::app(self.term(s / 2), self.term(s - s / 2)),
            5 => AnnTerm::erased_app(self.term(s / 2), self.term(s - s / 2)),
            6 => AnnTerm::type_app(self.term(s / 2), self.ty(s - s / 2)),
            7 => AnnTerm::pair(self.term(s / 2), self.term(s - s / 2)),
            8 => AnnTerm::proj1(self.term(s)),
            9 => AnnTerm::proj2(self.term(s)),
            10 => AnnTerm::beta(self.term(s)),
            11 => AnnTerm::delta(self.term(s)),
            12 => AnnTerm::rho(self.term(s / 2), self.term(s - s / 2)),
            13 => AnnTerm::chi(self.ty(s / 2), self.term(s - s / 2)),
            _ => AnnTerm::phi(self.term(s / 3), self.term(s / 3), self.term(s - 2 * (s / 3))),
        }
    }

    pub fn ty(&mut self, size: usize) -> TypeExpr {
        if size <= 1 {
            if let Some(x) = self.pick_type_var() {
                return TypeExpr::free(x);
            }
            let a = self.term(1);
            return TypeExpr::eq(a.clone(), a);
        }
        let s = size - 1;
        match self.rng.gen_range(0..10) {
            0 => {
                let x = self.type_binder();
                let k = self.kind(s / 2);
                let body = self.under_type(&x, |g| g.ty(s - s / 2));
                TypeExpr::all_type(&x, k, body)
            }
            c @ 1..=4 => {
                let x = self.term_binder();
                let dom = self.ty(s / 2);
                let body = self.under_term(&x, |g| g.ty(s - s / 2));
                match c {
                    1 => TypeExpr::all_term(&x, dom, body),
                    2 => TypeExpr::pi(&x, dom, body),
                    3 => TypeExpr::iota(&x, dom, body),
                    _ => TypeExpr::lam_term(&x, dom, body),
                }
            }
            5 => {
                let x = self.type_binder();
                let k = self.kind(s / 2);
                let body = self.under_type(&x, |g| g.ty(s - s / 2));
                TypeExpr::lam_type(&x, k, body)
            }
            6 => TypeExpr::app_term(self.ty(s / 2), self.term(s - s / 2)),
            7 => TypeExpr::app_type(self.ty(s / 2), self.ty(s - s / 2)),
            8 => TypeExpr::eq(self.term(s / 2), self.term(s - s / 2)),
            _ => self.ty(1),
        }
    }

    pub fn kind(&mut self, size: usize) -> KindExpr {
        if size <= 1 {
            return KindExpr::Star;
        }
        let s = size - 1;
        if self.rng.gen_bool(0.5) {
            let x = self.term_binder();
            let dom = self.ty(s / 2);
            let body = self.under_term(&x, |g| g.kind(s - s / 2));
            KindExpr::pi_term(&x, dom, body)
        } else {
            let x = self.type_binder();
            let dom = self.kind(s / 2);
            let body = self.under_type(&x, |g| g.kind(s - s / 2));
            KindExpr::pi_type(&x, dom, body)
        }
    }
}
