use super::{AnnTerm, KindExpr, Name, Namespace, Syntax, TLamBinder, TypeExpr, Var};

/// Number of term and type binders crossed so far.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Depth {
    pub term: usize,
    pub ty: usize,
}

impl Depth {
    pub const ZERO: Depth = Depth { term: 0, ty: 0 };

    pub fn get(self, ns: Namespace) -> usize {
        match ns {
            Namespace::Term => self.term,
            Namespace::Type => self.ty,
        }
    }

    pub fn under_term(self) -> Depth {
        Depth {
            term: self.term + 1,
            ..self
        }
    }

    pub fn under_type(self) -> Depth {
        Depth {
            ty: self.ty + 1,
            ..self
        }
    }
}

/// Rewrites variable occurrences; `None` keeps the occurrence.
pub trait VarMap {
    fn term_var(&mut self, v: &Var, depth: Depth) -> Option<AnnTerm>;
    fn type_var(&mut self, v: &Var, depth: Depth) -> Option<TypeExpr>;
}

pub(super) struct Shift {
    pub ns: Namespace,
    pub cutoff: usize,
    pub amount: isize,
}

impl Shift {
    fn shifted(&self, v: &Var, depth: Depth) -> Option<usize> {
        match v {
            Var::Bound(i) if *i >= self.cutoff + depth.get(self.ns) => {
                let j = *i as isize + self.amount;
                assert!(j >= 0, "shift produced a negative index");
                Some(j as usize)
            }
            _ => None,
        }
    }
}

impl VarMap for Shift {
    fn term_var(&mut self, v: &Var, depth: Depth) -> Option<AnnTerm> {
        if self.ns != Namespace::Term {
            return None;
        }
        self.shifted(v, depth).map(AnnTerm::bound)
    }

    fn type_var(&mut self, v: &Var, depth: Depth) -> Option<TypeExpr> {
        if self.ns != Namespace::Type {
            return None;
        }
        self.shifted(v, depth).map(TypeExpr::bound)
    }
}

enum Replacement<'a> {
    Term(&'a AnnTerm),
    Type(&'a TypeExpr),
}

impl Replacement<'_> {
    fn ns(&self) -> Namespace {
        match self {
            Replacement::Term(_) => Namespace::Term,
            Replacement::Type(_) => Namespace::Type,
        }
    }
}

pub(super) struct Instantiate<'a> {
    with: Replacement<'a>,
}

impl<'a> Instantiate<'a> {
    pub fn term(t: &'a AnnTerm) -> Self {
        Instantiate {
            with: Replacement::Term(t),
        }
    }

    pub fn ty(s: &'a TypeExpr) -> Self {
        Instantiate {
            with: Replacement::Type(s),
        }
    }

    // Some(Ok(())) on a hit, Some(Err(j)) for a lowered index.
    fn classify(&self, v: &Var, depth: Depth) -> Option<Result<(), usize>> {
        match v {
            Var::Bound(i) => {
                let d = depth.get(self.with.ns());
                if *i == d {
                    Some(Ok(()))
                } else if *i > d {
                    Some(Err(i - 1))
                } else {
                    None
                }
            }
            Var::Free(_) => None,
        }
    }
}

impl VarMap for Instantiate<'_> {
    fn term_var(&mut self, v: &Var, depth: Depth) -> Option<AnnTerm> {
        let Replacement::Term(t) = self.with else {
            return None;
        };
        match self.classify(v, depth)? {
            Ok(()) => Some(t.shift_by(depth)),
            Err(j) => Some(AnnTerm::bound(j)),
        }
    }

    fn type_var(&mut self, v: &Var, depth: Depth) -> Option<TypeExpr> {
        let Replacement::Type(s) = self.with else {
            return None;
        };
        match self.classify(v, depth)? {
            Ok(()) => Some(s.shift_by(depth)),
            Err(j) => Some(TypeExpr::bound(j)),
        }
    }
}

pub(super) struct Close<'a> {
    name: &'a Name,
}

impl<'a> Close<'a> {
    pub fn new(name: &'a Name) -> Self {
        Close { name }
    }
}

impl VarMap for Close<'_> {
    fn term_var(&mut self, v: &Var, depth: Depth) -> Option<AnnTerm> {
        match v {
            Var::Free(n) if n == self.name => Some(AnnTerm::bound(depth.term)),
            _ => None,
        }
    }

    fn type_var(&mut self, v: &Var, depth: Depth) -> Option<TypeExpr> {
        match v {
            Var::Free(n) if n == self.name => Some(TypeExpr::bound(depth.ty)),
            _ => None,
        }
    }
}

pub(super) struct SubstFree<'a> {
    name: &'a Name,
    with: Replacement<'a>,
}

impl<'a> SubstFree<'a> {
    pub fn term(name: &'a Name, t: &'a AnnTerm) -> Self {
        SubstFree {
            name,
            with: Replacement::Term(t),
        }
    }

    pub fn ty(name: &'a Name, s: &'a TypeExpr) -> Self {
        SubstFree {
            name,
            with: Replacement::Type(s),
        }
    }
}

impl VarMap for SubstFree<'_> {
    fn term_var(&mut self, v: &Var, depth: Depth) -> Option<AnnTerm> {
        match (v, &self.with) {
            (Var::Free(n), Replacement::Term(t)) if n == self.name => Some(t.shift_by(depth)),
            _ => None,
        }
    }

    fn type_var(&mut self, v: &Var, depth: Depth) -> Option<TypeExpr> {
        match (v, &self.with) {
            (Var::Free(n), Replacement::Type(s)) if n == self.name => Some(s.shift_by(depth)),
            _ => None,
        }
    }
}

/// Substitutes many free names at once.
pub(super) struct Inline<'a> {
    pub lookup: &'a dyn Fn(&Name) -> Option<Definiens>,
}

/// What a defined name stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Definiens {
    Term(AnnTerm),
    Type(TypeExpr),
}

impl VarMap for Inline<'_> {
    fn term_var(&mut self, v: &Var, depth: Depth) -> Option<AnnTerm> {
        match v {
            Var::Free(n) => match (self.lookup)(n)? {
                Definiens::Term(t) => Some(t.shift_by(depth)),
                Definiens::Type(_) => None,
            },
            _ => None,
        }
    }

    fn type_var(&mut self, v: &Var, depth: Depth) -> Option<TypeExpr> {
        match v {
            Var::Free(n) => match (self.lookup)(n)? {
                Definiens::Type(s) => Some(s.shift_by(depth)),
                Definiens::Term(_) => None,
            },
            _ => None,
        }
    }
}

fn bx<T>(t: T) -> Box<T> {
    Box::new(t)
}

impl Syntax for AnnTerm {
    fn map_vars(&self, d: Depth, f: &mut dyn VarMap) -> AnnTerm {
        use AnnTerm::*;
        match self {
            Var(v) => f.term_var(v, d).unwrap_or_else(|| self.clone()),
            Lam(h, b) => Lam(h.clone(), bx(b.map_vars(d.under_term(), f))),
            TLam(TLamBinder::Term(h), b) => {
                TLam(TLamBinder::Term(h.clone()), bx(b.map_vars(d.under_term(), f)))
            }
            TLam(TLamBinder::Type(h), b) => {
                TLam(TLamBinder::Type(h.clone()), bx(b.map_vars(d.under_type(), f)))
            }
            App(a, b) => App(bx(a.map_vars(d, f)), bx(b.map_vars(d, f))),
            ErasedApp(a, b) => ErasedApp(bx(a.map_vars(d, f)), bx(b.map_vars(d, f))),
            TypeApp(a, s) => TypeApp(bx(a.map_vars(d, f)), bx(s.map_vars(d, f))),
            Pair(a, b) => Pair(bx(a.map_vars(d, f)), bx(b.map_vars(d, f))),
            Proj1(a) => Proj1(bx(a.map_vars(d, f))),
            Proj2(a) => Proj2(bx(a.map_vars(d, f))),
            Beta(a) => Beta(bx(a.map_vars(d, f))),
            Delta(a) => Delta(bx(a.map_vars(d, f))),
            Rho(q, b) => Rho(bx(q.map_vars(d, f)), bx(b.map_vars(d, f))),
            Chi(s, b) => Chi(bx(s.map_vars(d, f)), bx(b.map_vars(d, f))),
            Phi(q, a, b) => Phi(bx(q.map_vars(d, f)), bx(a.map_vars(d, f)), bx(b.map_vars(d, f))),
        }
    }

    fn visit_vars(&self, d: Depth, f: &mut dyn FnMut(Namespace, &Var, Depth)) {
        use AnnTerm::*;
        match self {
            Var(v) => f(Namespace::Term, v, d),
            Lam(_, b) | TLam(TLamBinder::Term(_), b) => b.visit_vars(d.under_term(), f),
            TLam(TLamBinder::Type(_), b) => b.visit_vars(d.under_type(), f),
            App(a, b) | ErasedApp(a, b) | Pair(a, b) | Rho(a, b) => {
                a.visit_vars(d, f);
                b.visit_vars(d, f);
            }
            TypeApp(a, s) => {
                a.visit_vars(d, f);
                s.visit_vars(d, f);
            }
            Chi(s, a) => {
                s.visit_vars(d, f);
                a.visit_vars(d, f);
            }
            Proj1(a) | Proj2(a) | Beta(a) | Delta(a) => a.visit_vars(d, f),
            Phi(q, a, b) => {
                q.visit_vars(d, f);
                a.visit_vars(d, f);
                b.visit_vars(d, f);
            }
        }
    }
}

impl Syntax for TypeExpr {
    fn map_vars(&self, d: Depth, f: &mut dyn VarMap) -> TypeExpr {
        use TypeExpr::*;
        match self {
            Var(v) => f.type_var(v, d).unwrap_or_else(|| self.clone()),
            AllType(h, k, b) => AllType(h.clone(), bx(k.map_vars(d, f)), bx(b.map_vars(d.under_type(), f))),
            AllTerm(h, a, b) => AllTerm(h.clone(), bx(a.map_vars(d, f)), bx(b.map_vars(d.under_term(), f))),
            Pi(h, a, b) => Pi(h.clone(), bx(a.map_vars(d, f)), bx(b.map_vars(d.under_term(), f))),
            Iota(h, a, b) => Iota(h.clone(), bx(a.map_vars(d, f)), bx(b.map_vars(d.under_term(), f))),
            LamTerm(h, a, b) => LamTerm(h.clone(), bx(a.map_vars(d, f)), bx(b.map_vars(d.under_term(), f))),
            LamType(h, k, b) => LamType(h.clone(), bx(k.map_vars(d, f)), bx(b.map_vars(d.under_type(), f))),
            AppTerm(a, t) => AppTerm(bx(a.map_vars(d, f)), bx(t.map_vars(d, f))),
            AppType(a, b) => AppType(bx(a.map_vars(d, f)), bx(b.map_vars(d, f))),
            Eq(a, b) => Eq(bx(a.map_vars(d, f)), bx(b.map_vars(d, f))),
        }
    }

    fn visit_vars(&self, d: Depth, f: &mut dyn FnMut(Namespace, &Var, Depth)) {
        use TypeExpr::*;
        match self {
            Var(v) => f(Namespace::Type, v, d),
            AllType(_, k, b) | LamType(_, k, b) => {
                k.visit_vars(d, f);
                b.visit_vars(d.under_type(), f);
            }
            AllTerm(_, a, b) | Pi(_, a, b) | Iota(_, a, b) | LamTerm(_, a, b) => {
                a.visit_vars(d, f);
                b.visit_vars(d.under_term(), f);
            }
            AppTerm(a, t) => {
                a.visit_vars(d, f);
                t.visit_vars(d, f);
            }
            AppType(a, b) => {
                a.visit_vars(d, f);
                b.visit_vars(d, f);
            }
            Eq(a, b) => {
                a.visit_vars(d, f);
                b.visit_vars(d, f);
            }
        }
    }
}

impl Syntax for KindExpr {
    fn map_vars(&self, d: Depth, f: &mut dyn VarMap) -> KindExpr {
        use KindExpr::*;
        match self {
            Star => Star,
            PiTerm(h, a, k) => PiTerm(h.clone(), bx(a.map_vars(d, f)), bx(k.map_vars(d.under_term(), f))),
            PiType(h, a, k) => PiType(h.clone(), bx(a.map_vars(d, f)), bx(k.map_vars(d.under_type(), f))),
        }
    }

    fn visit_vars(&self, d: Depth, f: &mut dyn FnMut(Namespace, &Var, Depth)) {
        use KindExpr::*;
        match self {
            Star => {}
            PiTerm(_, a, k) => {
                a.visit_vars(d, f);
                k.visit_vars(d.under_term(), f);
            }
            PiType(_, a, k) => {
                a.visit_vars(d, f);
                k.visit_vars(d.under_type(), f);
            }
        }
    }
}
