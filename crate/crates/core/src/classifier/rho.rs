//! Rewriting terms inside a type along a proved equation.

use crate::erasure::{erase, PureTerm};
use crate::syntax::{AnnTerm, Depth, KindExpr, Syntax, TLamBinder, TypeExpr};

struct Rewriter<'a> {
    pattern: PureTerm,
    to: &'a AnnTerm,
    count: usize,
}

impl Rewriter<'_> {
    fn term(&mut self, t: &AnnTerm, depth: Depth) -> AnnTerm {
        use AnnTerm::*;
        if erase(t) == self.pattern {
            self.count += 1;
            return self.to.shift_by(depth);
        }
        let bx = |t: AnnTerm| Box::new(t);
        // Only positions that survive erasure are searched; the others
        // cannot affect what the type means.
        match t {
            Var(_) => t.clone(),
            Lam(h, b) => Lam(h.clone(), bx(self.term(b, depth.under_term()))),
            TLam(TLamBinder::Term(h), b) => {
                TLam(TLamBinder::Term(h.clone()), bx(self.term(b, depth.under_term())))
            }
            TLam(TLamBinder::Type(h), b) => {
                TLam(TLamBinder::Type(h.clone()), bx(self.term(b, depth.under_type())))
            }
            App(f, a) => App(bx(self.term(f, depth)), bx(self.term(a, depth))),
            ErasedApp(f, a) => ErasedApp(bx(self.term(f, depth)), a.clone()),
            TypeApp(f, s) => TypeApp(bx(self.term(f, depth)), s.clone()),
            Pair(a, b) => Pair(bx(self.term(a, depth)), b.clone()),
            Proj1(a) => Proj1(bx(self.term(a, depth))),
            Proj2(a) => Proj2(bx(self.term(a, depth))),
            Beta(a) => Beta(bx(self.term(a, depth))),
            Delta(a) => Delta(bx(self.term(a, depth))),
            Rho(q, b) => Rho(q.clone(), bx(self.term(b, depth))),
            Chi(s, b) => Chi(s.clone(), bx(self.term(b, depth))),
            Phi(q, a, b) => Phi(q.clone(), a.clone(), bx(self.term(b, depth))),
        }
    }

    fn ty(&mut self, t: &TypeExpr, depth: Depth) -> TypeExpr {
        use TypeExpr::*;
        let bx = |t: TypeExpr| Box::new(t);
        match t {
            Var(_) => t.clone(),
            AllType(h, k, b) => AllType(
                h.clone(),
                Box::new(self.kind(k, depth)),
                bx(self.ty(b, depth.under_type())),
            ),
            LamType(h, k, b) => LamType(
                h.clone(),
                Box::new(self.kind(k, depth)),
                bx(self.ty(b, depth.under_type())),
            ),
            AllTerm(h, d, b) => AllTerm(
                h.clone(),
                bx(self.ty(d, depth)),
                bx(self.ty(b, depth.under_term())),
            ),
            Pi(h, d, b) => Pi(
                h.clone(),
                bx(self.ty(d, depth)),
                bx(self.ty(b, depth.under_term())),
            ),
            Iota(h, d, b) => Iota(
                h.clone(),
                bx(self.ty(d, depth)),
                bx(self.ty(b, depth.under_term())),
            ),
            LamTerm(h, d, b) => LamTerm(
                h.clone(),
                bx(self.ty(d, depth)),
                bx(self.ty(b, depth.under_term())),
            ),
            AppTerm(f, a) => AppTerm(bx(self.ty(f, depth)), Box::new(self.term(a, depth))),
            AppType(f, a) => AppType(bx(self.ty(f, depth)), bx(self.ty(a, depth))),
            Eq(l, r) => Eq(Box::new(self.term(l, depth)), Box::new(self.term(r, depth))),
        }
    }

    fn kind(&mut self, k: &KindExpr, depth: Depth) -> KindExpr {
        match k {
            KindExpr::Star => KindExpr::Star,
            KindExpr::PiTerm(h, d, b) => KindExpr::PiTerm(
                h.clone(),
                Box::new(self.ty(d, depth)),
                Box::new(self.kind(b, depth.under_term())),
            ),
            KindExpr::PiType(h, d, b) => KindExpr::PiType(
                h.clone(),
                Box::new(self.kind(d, depth)),
                Box::new(self.kind(b, depth.under_type())),
            ),
        }
    }
}

/// Replaces, in every term inside `e`, each outermost subterm whose erasure
/// equals the erasure of `from` by `to`. Returns the new type and the number
/// of replacements.
///
/// `from` and `to` must be locally closed. A subterm mentioning a variable
/// bound inside `e` never matches.
pub fn rho_rewrite(e: &TypeExpr, from: &AnnTerm, to: &AnnTerm) -> (TypeExpr, usize) {
    let mut rw = Rewriter {
        pattern: erase(from),
        to,
        count: 0,
    };
    let out = rw.ty(e, Depth::ZERO);
    (out, rw.count)
}
