//! Erasure from annotated terms to pure untyped lambda terms.

use std::collections::BTreeSet;

use crate::syntax::{AnnTerm, Hint, Name, TLamBinder, Var};

/// An untyped lambda term. Only these are ever reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PureTerm {
    Var(Var),
    Lam(Hint, Box<PureTerm>),
    App(Box<PureTerm>, Box<PureTerm>),
}

impl PureTerm {
    pub fn free(name: Name) -> PureTerm {
        PureTerm::Var(Var::Free(name))
    }

    pub fn bound(i: usize) -> PureTerm {
        PureTerm::Var(Var::Bound(i))
    }

    /// `λ x . body`, abstracting the free name `x`.
    pub fn lam(x: &Name, body: PureTerm) -> PureTerm {
        PureTerm::Lam(Hint::new(x.spelling()), Box::new(body.close(x, 0)))
    }

    pub fn app(f: PureTerm, a: PureTerm) -> PureTerm {
        PureTerm::App(Box::new(f), Box::new(a))
    }

    fn close(&self, x: &Name, depth: usize) -> PureTerm {
        match self {
            PureTerm::Var(Var::Free(n)) if n == x => PureTerm::bound(depth),
            PureTerm::Var(_) => self.clone(),
            PureTerm::Lam(h, b) => PureTerm::Lam(h.clone(), Box::new(b.close(x, depth + 1))),
            PureTerm::App(f, a) => PureTerm::app(f.close(x, depth), a.close(x, depth)),
        }
    }

    pub fn fv(&self) -> BTreeSet<Name> {
        fn go(p: &PureTerm, out: &mut BTreeSet<Name>) {
            match p {
                PureTerm::Var(Var::Free(n)) => {
                    out.insert(n.clone());
                }
                PureTerm::Var(Var::Bound(_)) => {}
                PureTerm::Lam(_, b) => go(b, out),
                PureTerm::App(f, a) => {
                    go(f, out);
                    go(a, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut out);
        out
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            PureTerm::Var(_) => 1,
            PureTerm::Lam(_, b) => 1 + b.size(),
            PureTerm::App(f, a) => 1 + f.size() + a.size(),
        }
    }
}

/// `|t|`: drops every annotation, type abstraction and application, erased
/// argument and proof construct.
///
/// A term variable bound by `Λ x` that still occurs in the erasure comes out
/// as the free name `x`; well-typed terms never do this.
pub fn erase(t: &AnnTerm) -> PureTerm {
    erase_in(t, &mut Vec::new())
}

// `env` holds the term binders crossed so far, innermost last: `None` for a
// binder that survives erasure, `Some(hint)` for an erased `Λ x`.
fn erase_in(t: &AnnTerm, env: &mut Vec<Option<Hint>>) -> PureTerm {
    use AnnTerm::*;
    match t {
        Var(crate::syntax::Var::Free(n)) => PureTerm::free(n.clone()),
        Var(crate::syntax::Var::Bound(i)) => {
            let i = *i;
            if i < env.len() {
                let pos = env.len() - 1 - i;
                match &env[pos] {
                    Some(hint) => PureTerm::free(Name::term(hint.as_str())),
                    None => PureTerm::bound(env[pos + 1..].iter().filter(|b| b.is_none()).count()),
                }
            } else {
                let kept = env.iter().filter(|b| b.is_none()).count();
                PureTerm::bound(i - env.len() + kept)
            }
        }
        Lam(h, body) => {
            env.push(None);
            let b = erase_in(body, env);
            env.pop();
            PureTerm::Lam(h.clone(), Box::new(b))
        }
        TLam(TLamBinder::Term(h), body) => {
            env.push(Some(h.clone()));
            let b = erase_in(body, env);
            env.pop();
            b
        }
        TLam(TLamBinder::Type(_), body) => erase_in(body, env),
        App(f, a) => PureTerm::app(erase_in(f, env), erase_in(a, env)),
        ErasedApp(f, _) | TypeApp(f, _) => erase_in(f, env),
        Pair(a, _) | Proj1(a) | Proj2(a) | Beta(a) | Delta(a) => erase_in(a, env),
        Rho(_, body) | Chi(_, body) => erase_in(body, env),
        Phi(_, _, target) => erase_in(target, env),
    }
}

/// The evident injection of pure terms into annotated terms.
pub fn embed(p: &PureTerm) -> AnnTerm {
    match p {
        PureTerm::Var(v) => AnnTerm::Var(v.clone()),
        PureTerm::Lam(h, b) => AnnTerm::Lam(h.clone(), Box::new(embed(b))),
        PureTerm::App(f, a) => AnnTerm::app(embed(f), embed(a)),
    }
}
